#include "cyclorec/qpoly.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <utility>

#include "cyclorec/errors.hpp"

namespace cyclorec {
namespace qpoly {

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const QPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

bool is_zero(const QPoly& p) { return degree(p) < 0; }

QPoly add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (is_zero(a) || is_zero(b)) return {};
  QPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

QPoly scale(const QPoly& a, const mpq_class& c) {
  QPoly r(a);
  for (auto& x : r) x *= c;
  trim(r);
  return r;
}

QPoly derivative(const QPoly& a) {
  QPoly r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<unsigned long>(i));
  trim(r);
  return r;
}

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  const int db = degree(b);
  if (db < 0) throw BadInput("polynomial division by zero");
  r = a;
  trim(r);
  q.assign(std::max(0, degree(r) - db + 1), mpq_class(0));
  const mpq_class lead = b[db];
  for (int dr = degree(r); dr >= db; dr = degree(r)) {
    mpq_class c = r[dr] / lead;
    q[dr - db] = c;
    for (int i = 0; i <= db; ++i) r[dr - db + i] -= c * b[i];
    r[dr] = 0;
    trim(r);
  }
  trim(q);
}

QPoly rem(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  divmod(a, b, q, r);
  return r;
}

QPoly quo(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  divmod(a, b, q, r);
  return q;
}

QPoly monic(const QPoly& a) {
  const int d = degree(a);
  if (d < 0) return {};
  return scale(a, 1 / mpq_class(a[d]));
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  trim(x);
  trim(y);
  while (!is_zero(y)) {
    QPoly r = rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

mpq_class resultant(const QPoly& a0, const QPoly& b0) {
  QPoly a = a0, b = b0;
  trim(a);
  trim(b);
  if (is_zero(a) || is_zero(b)) return 0;
  mpq_class acc = 1;
  while (true) {
    const int da = degree(a), db = degree(b);
    if (db == 0) {
      mpq_class p;
      mpz_pow_ui(p.get_num_mpz_t(), b[0].get_num_mpz_t(), da);
      mpz_pow_ui(p.get_den_mpz_t(), b[0].get_den_mpz_t(), da);
      p.canonicalize();
      return acc * p;
    }
    if (da == 0) {
      mpq_class p;
      mpz_pow_ui(p.get_num_mpz_t(), a[0].get_num_mpz_t(), db);
      mpz_pow_ui(p.get_den_mpz_t(), a[0].get_den_mpz_t(), db);
      p.canonicalize();
      return acc * p;
    }
    QPoly r = rem(a, b);
    if (is_zero(r)) return 0;
    const int dr = degree(r);
    if ((da % 2 == 1) && (db % 2 == 1)) acc = -acc;
    mpq_class lb = b[db], p = 1;
    for (int i = 0; i < da - dr; ++i) p *= lb;
    acc *= p;
    a = std::move(b);
    b = std::move(r);
  }
}

mpq_class eval(const QPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

ZPoly primitive_integer(const QPoly& p0) {
  QPoly p = p0;
  trim(p);
  if (p.empty()) return {};
  mpz_class den = 1;
  for (const auto& c : p) den = lcm(den, mpz_class(c.get_den()));
  ZPoly z;
  z.reserve(p.size());
  mpz_class content = 0;
  for (const auto& c : p) {
    mpz_class v = c.get_num() * (den / c.get_den());
    content = gcd(content, v);
    z.push_back(v);
  }
  if (z.back() < 0) content = -content;
  for (auto& c : z) c /= content;
  return z;
}

std::string to_string(const ZPoly& p, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    mpz_class c = p[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    c = abs(c);
    if (c != 1 || i == 0) os << c;
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace qpoly

unsigned long euler_phi(unsigned long m) {
  unsigned long r = m;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    r -= r / p;
  }
  if (m > 1) r -= r / m;
  return r;
}

ZPoly cyclotomic_polynomial(unsigned m) {
  static std::mutex mu;
  static std::map<unsigned, ZPoly> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  if (m == 0) throw BadInput("cyclotomic polynomial of order 0");
  QPoly num(m + 1, mpq_class(0));
  num[0] = -1;
  num[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d) continue;
    ZPoly pd = cyclotomic_polynomial(d);
    QPoly q(pd.begin(), pd.end());
    QPoly quot, r;
    qpoly::divmod(num, q, quot, r);
    num = std::move(quot);
  }
  ZPoly out;
  for (const auto& c : num) out.push_back(c.get_num());
  std::lock_guard lock(mu);
  cache.emplace(m, out);
  return out;
}

}  // namespace cyclorec
