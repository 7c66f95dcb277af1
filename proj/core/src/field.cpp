#include "cyclorec/field.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "cyclorec/errors.hpp"

namespace cyclorec {

CycloField::CycloField(unsigned m) : m_(m) {
  if (m == 0) throw BadInput("cyclotomic conductor must be positive");
  phi_ = cyclotomic_polynomial(m);
  degree_ = static_cast<unsigned>(phi_.size() - 1);
  torsion_ = std::lcm(2u, m);
  if (m == 1) {
    galois_ = {1};
  } else {
    for (unsigned a = 1; a < m; ++a)
      if (std::gcd(a, m) == 1) galois_.push_back(a);
  }

  // zeta^e for e < m by repeated multiplication by X modulo the monic Phi_m.
  powers_.assign(m, std::vector<mpz_class>(degree_, 0));
  std::vector<mpz_class> cur(degree_, 0);
  cur[0] = 1;
  if (degree_ == 1 && m <= 2) {
    // Phi_1 = X - 1 and Phi_2 = X + 1 have zeta rational.
    for (unsigned e = 0; e < m; ++e) powers_[e][0] = (e % 2 == 1 && m == 2) ? -1 : 1;
    return;
  }
  for (unsigned e = 0; e < m; ++e) {
    powers_[e] = cur;
    mpz_class top = cur[degree_ - 1];
    for (unsigned i = degree_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (unsigned i = 0; i < degree_; ++i) cur[i] -= top * phi_[i];
  }
}

const std::vector<mpz_class>& CycloField::power(long e) const {
  long r = e % static_cast<long>(m_);
  if (r < 0) r += m_;
  return powers_[static_cast<size_t>(r)];
}

FieldPtr make_field(unsigned m) {
  static std::mutex mu;
  static std::map<unsigned, FieldPtr> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  auto f = std::make_shared<const CycloField>(m);
  std::lock_guard lock(mu);
  return cache.emplace(m, f).first->second;
}

CycloElem::CycloElem(FieldPtr field) : field_(std::move(field)) {
  c_.assign(field_->degree(), mpq_class(0));
}

CycloElem::CycloElem(FieldPtr field, std::vector<mpq_class> coords)
    : field_(std::move(field)), c_(std::move(coords)) {
  if (c_.size() > field_->degree()) {
    // Accept longer coordinate vectors as polynomials in zeta and reduce them.
    std::vector<mpq_class> r(field_->degree(), mpq_class(0));
    for (size_t e = 0; e < c_.size(); ++e) {
      if (c_[e] == 0) continue;
      const auto& pw = field_->power(static_cast<long>(e));
      for (size_t i = 0; i < r.size(); ++i)
        if (pw[i] != 0) r[i] += c_[e] * pw[i];
    }
    c_ = std::move(r);
  } else {
    c_.resize(field_->degree(), mpq_class(0));
  }
}

CycloElem CycloElem::rational(FieldPtr field, const mpq_class& q) {
  CycloElem e(std::move(field));
  e.c_[0] = q;
  return e;
}

CycloElem CycloElem::zeta_power(FieldPtr field, long e) {
  const auto& pw = field->power(e);
  std::vector<mpq_class> c(pw.begin(), pw.end());
  return CycloElem(std::move(field), std::move(c));
}

CycloElem CycloElem::root_of_unity(FieldPtr field, long num, unsigned long den) {
  const unsigned long t = field->torsion_order();
  if (den == 0 || t % den != 0)
    throw UniverseTooSmall("root of unity of order " + std::to_string(den) +
                           " is not in Q(zeta_" + std::to_string(field->conductor()) + ")");
  long k = num * static_cast<long>(t / den);  // exp(2 pi i k / t)
  k %= static_cast<long>(t);
  if (k < 0) k += t;
  const long m = field->conductor();
  if (t == static_cast<unsigned long>(m)) return zeta_power(field, k);
  // m odd, t = 2m: exp(2 pi i k / 2m) = zeta^(k/2) or -zeta^((k + m)/2).
  if (k % 2 == 0) return zeta_power(field, k / 2);
  return -zeta_power(field, (k + m) / 2);
}

unsigned CycloElem::conductor() const noexcept { return field_->conductor(); }

bool CycloElem::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool CycloElem::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool CycloElem::is_integral() const {
  for (const auto& x : c_)
    if (x.get_den() != 1) return false;
  return true;
}

void CycloElem::check_same(const CycloElem& o) const {
  if (!field_ || !o.field_ || field_->conductor() != o.field_->conductor())
    throw BadInput("field mismatch in cyclotomic arithmetic");
}

CycloElem CycloElem::operator-() const {
  CycloElem r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

CycloElem& CycloElem::operator+=(const CycloElem& o) {
  check_same(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloElem& CycloElem::operator-=(const CycloElem& o) {
  check_same(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycloElem& CycloElem::operator*=(const CycloElem& o) { return *this = *this * o; }

CycloElem& CycloElem::operator*=(const mpq_class& q) {
  for (auto& x : c_) x *= q;
  return *this;
}

CycloElem operator*(const CycloElem& a, const CycloElem& b) {
  a.check_same(b);
  const size_t d = a.c_.size();
  if (d == 1) return CycloElem::rational(a.field_, a.c_[0] * b.c_[0]);
  std::vector<mpq_class> prod(2 * d - 1, mpq_class(0));
  for (size_t i = 0; i < d; ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < d; ++j)
      if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
  }
  return CycloElem(a.field_, std::move(prod));
}

bool CycloElem::operator==(const CycloElem& o) const {
  check_same(o);
  return c_ == o.c_;
}

bool CycloElem::operator<(const CycloElem& o) const {
  check_same(o);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] < o.c_[i]) return true;
    if (o.c_[i] < c_[i]) return false;
  }
  return false;
}

CycloElem CycloElem::pow(unsigned long n) const {
  CycloElem result = one(field_), base = *this;
  while (n) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

CycloElem CycloElem::inverse() const {
  if (is_zero()) throw ZeroElement("inverse of zero");
  if (c_.size() == 1) return rational(field_, 1 / c_[0]);
  // beta^-1 = (product of the other conjugates) / N(beta)
  CycloElem others = one(field_);
  const auto& ex = field_->galois_exponents();
  for (size_t i = 1; i < ex.size(); ++i) others *= galois(ex[i]);
  CycloElem n = *this * others;
  return others * (1 / mpq_class(n.c_[0]));
}

CycloElem CycloElem::galois(long a) const {
  const long m = field_->conductor();
  long r = a % m;
  if (r < 0) r += m;
  if (m <= 2) return *this;
  if (std::gcd(r, m) != 1) throw BadInput("galois exponent not coprime to the conductor");
  std::vector<mpq_class> poly(static_cast<size_t>(m), mpq_class(0));
  for (size_t i = 0; i < c_.size(); ++i) poly[(i * r) % m] += c_[i];
  return CycloElem(field_, std::move(poly));
}

CycloElem CycloElem::embed(const FieldPtr& target) const {
  const unsigned m = field_->conductor(), n = target->conductor();
  if (n % m != 0) throw BadInput("target conductor is not a multiple of the source conductor");
  if (m == n) return CycloElem(target, c_);
  const unsigned step = n / m;
  std::vector<mpq_class> poly(static_cast<size_t>(n), mpq_class(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    // For m = 2 the field is Q and zeta_2 = -1 = zeta_n^(n/2); coordinates are rational anyway.
    poly[(i * step) % n] += c_[i];
  }
  return CycloElem(target, std::move(poly));
}

std::string format_rational(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty rational");
  try {
    const auto dot = s.find('.');
    const auto ex = s.find_first_of("eE");
    if (dot != std::string::npos || ex != std::string::npos) {
      // Exact value of a decimal literal.
      std::string mant = s.substr(0, ex);
      long exp10 = 0;
      if (ex != std::string::npos) exp10 = std::stol(s.substr(ex + 1));
      bool neg = false;
      if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        neg = mant[0] == '-';
        mant.erase(0, 1);
      }
      std::string digits;
      long frac = 0;
      bool after = false;
      for (char ch : mant) {
        if (ch == '.') {
          if (after) throw ParseError("bad decimal '" + s + "'");
          after = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
          digits.push_back(ch);
          if (after) ++frac;
        } else {
          throw ParseError("bad decimal '" + s + "'");
        }
      }
      if (digits.empty()) throw ParseError("bad decimal '" + s + "'");
      mpq_class q(mpz_class(digits, 10), 1);
      long e = exp10 - frac;
      mpz_class p10;
      mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
      if (e < 0) q /= p10;
      else q *= p10;
      q.canonicalize();
      return neg ? mpq_class(-q) : q;
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational '" + s + "'");
  } catch (const std::out_of_range&) {
    throw ParseError("bad rational '" + s + "'");
  }
}

std::string CycloElem::serialize() const {
  std::ostringstream os;
  os << field_->conductor() << ";";
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : " ") << format_rational(c_[i]);
  return os.str();
}

CycloElem CycloElem::parse(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw ParseError("field element needs 'm; c0, c1, ...'");
  unsigned long m = 0;
  try {
    m = std::stoul(std::string(text.substr(0, semi)));
  } catch (const std::exception&) {
    throw ParseError("bad conductor in field element");
  }
  if (m == 0) throw ParseError("conductor must be positive");
  auto field = make_field(static_cast<unsigned>(m));
  std::vector<mpq_class> coords;
  std::string_view rest = text.substr(semi + 1);
  while (true) {
    const auto comma = rest.find(',');
    coords.push_back(parse_rational(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (coords.size() != field->degree())
    throw ParseError("expected " + std::to_string(field->degree()) + " coordinates");
  return CycloElem(field, std::move(coords));
}

}  // namespace cyclorec
