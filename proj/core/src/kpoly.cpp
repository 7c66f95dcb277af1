#include "cyclorec/kpoly.hpp"

#include <sstream>

#include "cyclorec/errors.hpp"

namespace cyclorec {

KPoly::KPoly(FieldPtr field, std::vector<CycloElem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  for (auto& c : c_) {
    if (c.field() == nullptr) c = CycloElem::zero(field_);
    if (c.conductor() != field_->conductor()) throw BadInput("polynomial coefficient from another field");
  }
  trim();
}

KPoly KPoly::constant(const CycloElem& c) { return KPoly(c.field(), {c}); }

KPoly KPoly::monomial(const CycloElem& c, unsigned long exp) {
  std::vector<CycloElem> v(exp + 1, CycloElem::zero(c.field()));
  v[exp] = c;
  return KPoly(c.field(), std::move(v));
}

void KPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

CycloElem KPoly::coeff(size_t i) const { return i < c_.size() ? c_[i] : CycloElem::zero(field_); }

CycloElem KPoly::operator()(const CycloElem& x) const {
  CycloElem acc = CycloElem::zero(x.field());
  const bool same = x.conductor() == field_->conductor();
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + (same ? c_[i] : c_[i].embed(x.field()));
  return acc;
}

KPoly& KPoly::operator+=(const KPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), CycloElem::zero(field_));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

KPoly& KPoly::operator-=(const KPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), CycloElem::zero(field_));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

KPoly operator*(const KPoly& a, const KPoly& b) {
  if (a.is_zero() || b.is_zero()) return KPoly(a.field_);
  std::vector<CycloElem> r(a.c_.size() + b.c_.size() - 1, CycloElem::zero(a.field_));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return KPoly(a.field_, std::move(r));
}

KPoly KPoly::operator*(const CycloElem& c) const {
  std::vector<CycloElem> r = c_;
  for (auto& x : r) x = x * c;
  return KPoly(field_, std::move(r));
}

KPoly KPoly::galois(long a) const {
  std::vector<CycloElem> r;
  r.reserve(c_.size());
  for (const auto& x : c_) r.push_back(x.galois(a));
  return KPoly(field_, std::move(r));
}

KPoly KPoly::embed(const FieldPtr& target) const {
  std::vector<CycloElem> r;
  r.reserve(c_.size());
  for (const auto& x : c_) r.push_back(x.embed(target));
  return KPoly(target, std::move(r));
}

KPoly KPoly::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inverse();
}

std::string KPoly::to_string(const char* var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].serialize() << ")";
    if (i > 0) os << "*" << var << "^" << i;
  }
  return os.str();
}

std::pair<KPoly, KPoly> divmod(const KPoly& a, const KPoly& b) {
  if (b.is_zero()) throw ZeroElement("polynomial division by zero");
  const FieldPtr& K = a.field();
  KPoly rem = a;
  if (rem.degree() < b.degree()) return {KPoly(K), rem};
  std::vector<CycloElem> q(static_cast<size_t>(rem.degree() - b.degree() + 1), CycloElem::zero(K));
  const CycloElem lead_inv = b.leading().inverse();
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    const long shift = rem.degree() - b.degree();
    CycloElem c = rem.leading() * lead_inv;
    q[static_cast<size_t>(shift)] = c;
    rem -= KPoly::monomial(c, static_cast<unsigned long>(shift)) * b;
  }
  return {KPoly(K, std::move(q)), rem};
}

KPoly gcd(KPoly a, KPoly b) {
  while (!b.is_zero()) {
    KPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

BiPoly BiPoly::outer(const KPoly& f, const KPoly& g) {
  BiPoly r(f.field());
  for (size_t i = 0; i < f.coeffs().size(); ++i)
    for (size_t j = 0; j < g.coeffs().size(); ++j)
      r.add_term(static_cast<long>(i), static_cast<long>(j), f.coeffs()[i] * g.coeffs()[j]);
  return r;
}

void BiPoly::add_term(long dx, long dy, const CycloElem& c) {
  auto [it, inserted] = t_.try_emplace({dx, dy}, c);
  if (!inserted) it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  for (const auto& [k, c] : o.t_) add_term(k.first, k.second, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  for (const auto& [k, c] : o.t_) add_term(k.first, k.second, -c);
  return *this;
}

BiPoly BiPoly::reduce_by_binomial(long r, long s, const CycloElem& u, bool mixed_shape) const {
  // X^r - u Y^s: rewrite X^r -> u Y^s. X^r Y^s - u: rewrite X^r Y^s -> u.
  // Each step lowers the X-degree, so the process terminates.
  BiPoly cur = *this;
  BiPoly done(field_);
  while (!cur.t_.empty()) {
    auto it = std::prev(cur.t_.end());  // largest X-degree
    auto [dx, dy] = it->first;
    CycloElem c = it->second;
    cur.t_.erase(it);
    const bool reducible = dx >= r && (!mixed_shape || dy >= s);
    if (!reducible) {
      done.add_term(dx, dy, c);
      continue;
    }
    if (mixed_shape)
      cur.add_term(dx - r, dy - s, c * u);
    else
      cur.add_term(dx - r, dy + s, c * u);
  }
  return done;
}

}  // namespace cyclorec
