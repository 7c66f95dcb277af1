#pragma once

// Polynomials with coefficients in a cyclotomic field, univariate and bivariate.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cyclorec/field.hpp"

namespace cyclorec {

/// Dense univariate polynomial over Q(zeta_m), low degree first. The zero
/// polynomial has no coefficients but still knows its field.
class KPoly {
 public:
  KPoly() = default;
  explicit KPoly(FieldPtr field) : field_(std::move(field)) {}
  KPoly(FieldPtr field, std::vector<CycloElem> coeffs);

  static KPoly constant(const CycloElem& c);
  static KPoly monomial(const CycloElem& c, unsigned long exp);

  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<CycloElem>& coeffs() const noexcept { return c_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const CycloElem& leading() const { return c_.back(); }
  CycloElem coeff(size_t i) const;

  CycloElem operator()(const CycloElem& x) const;  // Horner evaluation

  KPoly& operator+=(const KPoly& o);
  KPoly& operator-=(const KPoly& o);
  friend KPoly operator+(KPoly a, const KPoly& b) { return a += b; }
  friend KPoly operator-(KPoly a, const KPoly& b) { return a -= b; }
  friend KPoly operator*(const KPoly& a, const KPoly& b);
  KPoly operator*(const CycloElem& c) const;
  bool operator==(const KPoly& o) const { return field_->conductor() == o.field_->conductor() && c_ == o.c_; }

  /// Coefficientwise Galois action zeta -> zeta^a; a = -1 is complex conjugation.
  KPoly galois(long a) const;
  KPoly conj() const { return galois(-1); }
  KPoly embed(const FieldPtr& target) const;
  KPoly monic() const;

  std::string to_string(const char* var = "X") const;

 private:
  void trim();

  FieldPtr field_;
  std::vector<CycloElem> c_;
};

std::pair<KPoly, KPoly> divmod(const KPoly& a, const KPoly& b);
KPoly gcd(KPoly a, KPoly b);  // monic, zero when both vanish

/// Sparse bivariate polynomial in X, Y keyed by (deg_X, deg_Y).
class BiPoly {
 public:
  explicit BiPoly(FieldPtr field) : field_(std::move(field)) {}

  /// f(X) * g(Y).
  static BiPoly outer(const KPoly& f, const KPoly& g);

  const FieldPtr& field() const noexcept { return field_; }
  const std::map<std::pair<long, long>, CycloElem>& terms() const noexcept { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add_term(long dx, long dy, const CycloElem& c);

  BiPoly& operator-=(const BiPoly& o);
  BiPoly& operator+=(const BiPoly& o);

  /// Remainder modulo X^r Y^s - u (with s possibly 0 for X^r - u) or X^r - u Y^s,
  /// by rewriting the leading monomial; zero iff the binomial divides.
  BiPoly reduce_by_binomial(long r, long s, const CycloElem& u, bool mixed_shape) const;

 private:
  FieldPtr field_;
  std::map<std::pair<long, long>, CycloElem> t_;
};

}  // namespace cyclorec
