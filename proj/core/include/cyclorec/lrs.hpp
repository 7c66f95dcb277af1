#pragma once

// Parametric recurrences U_n(X) = sum_i f_i(X) alpha_i(X)^n and their values at roots of unity.

#include <optional>
#include <string>
#include <vector>

#include "cyclorec/ball.hpp"
#include "cyclorec/field.hpp"
#include "cyclorec/kpoly.hpp"

namespace cyclorec {

class ParamLRS {
 public:
  /// Validates: k >= 2, equal lengths, nonzero polynomials, pairwise distinct alphas.
  ParamLRS(std::vector<KPoly> f, std::vector<KPoly> alpha);

  const FieldPtr& coeff_field() const noexcept { return field_; }
  size_t order() const noexcept { return f_.size(); }
  /// Largest degree among all f_i and alpha_i.
  unsigned degree_bound() const noexcept { return d_; }
  const std::vector<KPoly>& f() const noexcept { return f_; }
  const std::vector<KPoly>& alpha() const noexcept { return alpha_; }

 private:
  FieldPtr field_;
  std::vector<KPoly> f_, alpha_;
  unsigned d_ = 0;
};

/// exp(2 pi i j / m) reduced to lowest terms: order / gcd and exponent in [0, order).
struct RootSpec {
  unsigned order;
  unsigned exponent;
};
RootSpec normalize_root(unsigned m, long j);

/// Conductor holding both the coefficients and a root of the given order.
unsigned working_conductor(const ParamLRS& L, unsigned root_order);

struct ExceptionalCheck {
  bool member = false;
  std::vector<std::string> reasons;
};

/// zeta must lie in a field containing the coefficients.
ExceptionalCheck in_exceptional_set(const ParamLRS& L, const CycloElem& zeta);

struct DominanceData {
  size_t dominant_count = 0;
  // Only meaningful when dominant_count == 1; balls are otherwise left empty.
  std::optional<RealBall> delta, rho, C7, C8, abs_alpha1, abs_f1;
};

class SpecializedLRS {
 public:
  const FieldPtr& field() const noexcept { return field_; }
  const CycloElem& zeta() const noexcept { return zeta_; }
  const RootSpec& root() const noexcept { return root_; }
  size_t order() const noexcept { return fvals_.size(); }
  /// Values sorted by decreasing modulus; index 0 is the dominant root when unique.
  const std::vector<CycloElem>& fvals() const noexcept { return fvals_; }
  const std::vector<CycloElem>& avals() const noexcept { return avals_; }
  /// Position of each sorted entry in the original parametrization.
  const std::vector<size_t>& original_index() const noexcept { return original_; }
  /// Monic prod (X - alpha_i(zeta)), low degree first.
  const KPoly& char_poly() const noexcept { return char_poly_; }
  const DominanceData& dominance() const noexcept { return dom_; }
  Precision precision() const noexcept { return prec_; }
  bool has_single_dominant() const noexcept { return dom_.dominant_count == 1; }

 private:
  friend SpecializedLRS specialize(const ParamLRS&, unsigned, long, Precision);
  FieldPtr field_;
  CycloElem zeta_;
  RootSpec root_{1, 0};
  std::vector<CycloElem> fvals_, avals_;
  std::vector<size_t> original_;
  KPoly char_poly_;
  DominanceData dom_;
  Precision prec_ = 128;
};

/// Throws ExceptionalParameter when zeta_m^j lies in the exceptional set, and
/// DegenerateGap when a unique dominant root has modulus at most one.
SpecializedLRS specialize(const ParamLRS& L, unsigned m, long j, Precision prec = 128);

CycloElem term_closed_form(const SpecializedLRS& Lz, unsigned long n);
/// u_n through the recurrence with coefficients from the characteristic polynomial.
CycloElem term_recurrence(const SpecializedLRS& Lz, unsigned long n);
/// u_0, ..., u_{n_max} through the recurrence.
std::vector<CycloElem> terms_recurrence(const SpecializedLRS& Lz, unsigned long n_max);

struct RemainderRatio {
  RealBall R_minus_1;  // |U_n / (f_1 alpha_1^n) - 1|
  RealBall bound;      // C8 |alpha_1|^(-n(1 - delta))
  bool ok = false;
};

RemainderRatio remainder_ratio(const SpecializedLRS& Lz, unsigned long n);

struct StructureReport {
  unsigned long n_star = 0;         // |U_n| > 1 is guaranteed analytically for n >= n_star
  unsigned long checked_up_to = 0;  // exact checks ran for 0..checked_up_to
  std::vector<std::string> notes;
};

/// Throws StructureViolation naming the first offending n.
StructureReport desired_structure_check(const SpecializedLRS& Lz, unsigned long n_check);

}  // namespace cyclorec
