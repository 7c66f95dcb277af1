#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_m), power basis 1, zeta, ..., zeta^(D-1).

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cyclorec/qpoly.hpp"

namespace cyclorec {

class CycloField;
using FieldPtr = std::shared_ptr<const CycloField>;

class CycloField {
 public:
  unsigned conductor() const noexcept { return m_; }
  unsigned degree() const noexcept { return degree_; }
  /// Order of the torsion subgroup: lcm(2, m).
  unsigned torsion_order() const noexcept { return torsion_; }
  const ZPoly& cyclotomic_poly() const noexcept { return phi_; }
  /// Exponents a, gcd(a, m) = 1, indexing the embeddings zeta -> zeta^a. The first is 1.
  const std::vector<unsigned>& galois_exponents() const noexcept { return galois_; }

  /// Coordinates of zeta^e reduced modulo Phi_m (e taken modulo m).
  const std::vector<mpz_class>& power(long e) const;

  explicit CycloField(unsigned m);

 private:
  unsigned m_;
  unsigned degree_;
  unsigned torsion_;
  ZPoly phi_;
  std::vector<unsigned> galois_;
  std::vector<std::vector<mpz_class>> powers_;
};

/// Shared, memoized field of conductor m (m >= 1).
FieldPtr make_field(unsigned m);

class CycloElem {
 public:
  CycloElem() = default;
  explicit CycloElem(FieldPtr field);  // zero
  CycloElem(FieldPtr field, std::vector<mpq_class> coords);

  static CycloElem zero(FieldPtr field) { return CycloElem(std::move(field)); }
  static CycloElem rational(FieldPtr field, const mpq_class& q);
  static CycloElem one(FieldPtr field) { return rational(std::move(field), 1); }
  /// zeta^e for any integer e.
  static CycloElem zeta_power(FieldPtr field, long e);
  /// exp(2 pi i num / den); den must divide the torsion order of the field.
  static CycloElem root_of_unity(FieldPtr field, long num, unsigned long den);

  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<mpq_class>& coords() const noexcept { return c_; }
  unsigned conductor() const noexcept;

  bool is_zero() const;
  bool is_rational() const;
  /// Constant coordinate; only meaningful when is_rational().
  const mpq_class& constant() const { return c_.at(0); }
  bool is_integral() const;

  CycloElem operator-() const;
  CycloElem& operator+=(const CycloElem& o);
  CycloElem& operator-=(const CycloElem& o);
  CycloElem& operator*=(const CycloElem& o);
  CycloElem& operator*=(const mpq_class& q);

  friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
  friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
  friend CycloElem operator*(const CycloElem& a, const CycloElem& b);
  friend CycloElem operator*(CycloElem a, const mpq_class& q) { return a *= q; }
  friend CycloElem operator/(const CycloElem& a, const CycloElem& b) { return a * b.inverse(); }

  bool operator==(const CycloElem& o) const;
  /// Lexicographic order on coordinates, for canonical containers only.
  bool operator<(const CycloElem& o) const;

  CycloElem pow(unsigned long n) const;
  /// Throws ZeroElement on zero.
  CycloElem inverse() const;
  /// Image under zeta -> zeta^a (a taken modulo m; gcd(a, m) must be 1).
  CycloElem galois(long a) const;
  /// Complex conjugation, the automorphism zeta -> zeta^-1.
  CycloElem conj() const { return galois(-1); }
  /// Image in Q(zeta_n) for a multiple n of the conductor.
  CycloElem embed(const FieldPtr& target) const;

  /// Serialization "m; c0, c1, ..." with rationals as p/q.
  std::string serialize() const;
  static CycloElem parse(std::string_view text);

 private:
  void check_same(const CycloElem& o) const;

  FieldPtr field_;
  std::vector<mpq_class> c_;
};

/// Parse "p", "-p" or "p/q" into a canonical rational; throws ParseError.
mpq_class parse_rational(std::string_view text);
std::string format_rational(const mpq_class& q);

}  // namespace cyclorec
