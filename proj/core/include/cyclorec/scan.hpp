#pragma once

// Exclusion machinery: ties among dominant roots at roots of unity, torsion-coset
// factors of |a_i(X)|^2 - |a_j(X)|^2, the exclusion budget, and a numerical level-set count.

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

#include "cyclorec/kpoly.hpp"
#include "cyclorec/lrs.hpp"

namespace cyclorec {

struct TieRow {
  unsigned m;  // order of zeta
  unsigned j;  // zeta = exp(2 pi i j / m), gcd(j, m) = 1
  size_t tie_size;
};

struct TieScan {
  std::vector<TieRow> rows;  // ordered by (m, j)
  size_t two_way = 0;        // rows with tie_size == 2
  size_t multi_way = 0;      // rows with tie_size >= 3
  size_t exceptional_skipped = 0;
};

/// Every root of unity of order <= M_max outside the exceptional set where two or more
/// characteristic roots share the maximal modulus.
TieScan scan_multi_dominant(const ParamLRS& L, unsigned M_max, unsigned workers = 1);

enum class BinomialShape { XY_minus_u, X_minus_uY };
std::string to_string(BinomialShape s);

struct TorsionWitness {
  long r, s;
  CycloElem u;          // root of unity in the coefficient field
  long u_num;           // u = exp(2 pi i u_num / u_den)
  unsigned long u_den;
  BinomialShape shape;  // X^r Y^s - u or X^r - u Y^s
};

struct TorsionFactorVerdict {
  bool found = false;
  std::vector<TorsionWitness> witnesses;
};

/// a_i(X) conj(a_i)(Y) - a_j(X) conj(a_j)(Y).
BiPoly modulus_difference(const KPoly& ai, const KPoly& aj);

/// Searches coprime 1 <= r, s <= D_max. Throws UniverseTooSmall when a torsion u
/// exists but is not in the coefficient field.
TorsionFactorVerdict torsion_factor_check(const KPoly& ai, const KPoly& aj, unsigned D_max);

struct ExclusionBudget {
  mpq_class total;        // d^2 (2k^3/3 + 22k^2)
  mpq_class two_dominant; // 22 d^2 k^2
  mpq_class per_pair;     // 44 d^2
  mpq_class three_dominant;  // 2 d^2 k(k-1)(k-2)/3
};

ExclusionBudget exclusion_budget(unsigned d, unsigned k);

struct RationalFunction {
  KPoly num, den;
  unsigned degree() const;
};

struct RationalFunctionPair {
  RationalFunction g1, g2;
};

struct LevelSetResult {
  size_t count = 0;
  size_t bound = 0;  // (n1 + n2)^2
  bool within_bound = false;
  bool exceptional_like = false;  // more isolated points than the bound allows: a curve of solutions
  size_t dropped_seeds = 0;       // seeds whose iteration did not converge
  std::vector<std::complex<double>> points;
  std::string rigor = "heuristic";
};

/// Numerical solutions of |g1(z)| = |g2(z)| = 1 from a grid of seeds over a disc.
/// Arithmetic is double precision; `precision_bits` only tightens the residual test.
LevelSetResult level_set_count(const RationalFunctionPair& pair, unsigned grid, unsigned precision_bits = 53,
                               unsigned workers = 1);

}  // namespace cyclorec
