#pragma once

// Explicit linear-forms-in-logarithms bounds and the constant pipelines built on them.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclorec/ball.hpp"
#include "cyclorec/ideal.hpp"
#include "cyclorec/intfactor.hpp"
#include "cyclorec/lrs.hpp"

namespace cyclorec {

struct MatveevInput {
  unsigned m = 2;                // number of logarithms
  unsigned D = 1;                // degree of the number field
  std::vector<RealBall> logA;    // logA_i >= max(h(eta_i), |log eta_i| / D, 0.16 / D)
  RealBall B;                    // >= 1
  int kappa = 2;                 // 1 for a real field, else 2
};

/// Fully explicit lower bound for log|Lambda| in the product form
/// -4 30^(m+4) (m+1)^5.5 D^(m+2) log(eD) log(emB) prod logA_i, rounded outward.
RealBall matveev_explicit(const MatveevInput& inp, Precision prec = 256);

/// -C D prod(A_i) log(eD) log(eB) with A_i = D logA_i. C is the caller-supplied
/// constant for (m, kappa); MissingConstant when absent.
RealBall matveev_linear_form(const MatveevInput& inp, const std::optional<RealBall>& C);

/// max(e, 2 x log x): a / log a < x forces a below this value.
RealBall resolve_n_bound(const RealBall& x);

enum class Pipeline { GreatestPrime, SPart, SUnit };
std::string to_string(Pipeline p);

struct NamedConstant {
  std::string name;
  RealBall value;
  std::string formula;
};

struct BoundRow {
  unsigned long n = 0;
  mpz_class abs_norm;
  mpz_class largest_norm;  // P
  mpz_class radical_norm;
  std::optional<mpz_class> s_part_norm;
  std::optional<RealBall> c1, c2, e_n;
  std::string split_case;  // "cofactor" or "S" when an S-part was taken
  bool complete = true;
};

struct BoundReport {
  Pipeline pipeline = Pipeline::GreatestPrime;
  std::vector<NamedConstant> constants;
  std::vector<BoundRow> rows;
  bool verdict = false;
  std::vector<std::pair<std::string, std::string>> thresholds;

  const NamedConstant* find(const std::string& name) const;
  std::optional<std::string> threshold(const std::string& name) const;
};

struct NRange {
  unsigned long lo = 0, hi = 0;
  bool operator==(const NRange&) const = default;
};

struct ReportOptions {
  unsigned workers = 1;
  Deadline deadline;
  Precision prec = 128;
};

/// Ideal factorizations of (U_n) for n in the range, in order.
std::vector<IdealFactorization> factor_terms(const SpecializedLRS& Lz, NRange range,
                                             const ReportOptions& opt = {});

/// Greatest prime and radical growth; facts[i] belongs to n = range.lo + i.
BoundReport greatest_prime_report(const SpecializedLRS& Lz, NRange range,
                            const std::vector<IdealFactorization>& facts, Precision prec = 128);
BoundReport greatest_prime_report(const SpecializedLRS& Lz, NRange range, const ReportOptions& opt = {});

/// S-part exponent e_n = log N([U_n]_S) / log|N(U_n)|.
BoundReport s_part_report(const SpecializedLRS& Lz, const std::vector<PrimeIdeal>& S, NRange range,
                            const std::vector<IdealFactorization>& facts, Precision prec = 128);
BoundReport s_part_report(const SpecializedLRS& Lz, const std::vector<PrimeIdeal>& S, NRange range,
                            const ReportOptions& opt = {});

struct SUnitBoundInput {
  std::vector<unsigned long> primes;  // rational primes generating S
  unsigned r = 1;                     // number of S-unit summands
  mpq_class eps;                      // > 0
  std::optional<RealBall> matveev_C;  // constant for the linear form in s + 3 logarithms
  Precision prec = 256;
};

struct SUnitBound {
  RealBall n_bound;   // every solution has n below this
  RealBall log_C5;    // log of the bound on max(n, |w_1|, ..., |w_r|)
  std::vector<NamedConstant> constants;
};

/// Bound for solutions of U_n(zeta) = w_1 + ... + w_r with S-integers
/// |w_1| + ... + |w_{r-1}| <= |w_r|^(1/(1+eps)).
SUnitBound s_unit_bound(const SpecializedLRS& Lz, const SUnitBoundInput& in);

}  // namespace cyclorec
