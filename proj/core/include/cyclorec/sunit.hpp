#pragma once

// U_n(zeta) = w_1 + ... + w_r in rational S-integers with |w_i|^(1+eps) < |w_r| for i < r.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "cyclorec/lrs.hpp"

namespace cyclorec {

/// Which integers count as S-integers besides the positive S-smooth ones.
struct SMembership {
  bool negative = true;
  bool zero = false;
};

struct SUnitConfig {
  std::vector<unsigned long> S;  // distinct primes
  unsigned r = 1;
  mpq_class eps;                 // > 0
  unsigned long n_min = 0;
  unsigned long n_max = 0;
  mpz_class height_cap;          // largest |w_r| the search may visit
  SMembership membership;
  unsigned workers = 1;
};

struct Solution {
  unsigned long n = 0;
  std::vector<mpz_class> w;                          // w_r last, the first r-1 ascending
  std::vector<std::vector<unsigned long>> exponents;  // |w_i| = prod p_j^exponents[i][j]
  std::vector<int> signs;
  std::optional<std::string> dependence;  // relation among f_1, alpha_1, w_r if one was found
};

struct SkippedN {
  unsigned long n;
  std::string reason;
  bool budget = false;  // true when the height cap was hit
};

struct SolveResult {
  std::vector<Solution> solutions;
  std::vector<SkippedN> skipped;
};

/// All positive integers up to bound with prime factors in S, ascending.
std::vector<mpz_class> enumerate_s_integers(const std::vector<unsigned long>& S, const mpz_class& bound);

/// Nonzero with every prime factor in S.
bool is_s_smooth(const mpz_class& v, const std::vector<unsigned long>& S);

/// Upper bound on |w_r| for any solution with the given value.
mpz_class window_bound(const mpz_class& value, unsigned r, const mpq_class& eps);
/// Necessary condition |value - w_r| < (r - 1) |w_r|^(1/(1+eps)); equality value == w_r when r = 1.
bool in_window(const mpz_class& value, const mpz_class& w_r, unsigned r, const mpq_class& eps);
/// |w|^(1+eps) < |w_r|.
bool eps_dominated(const mpz_class& w, const mpz_class& w_r, const mpq_class& eps);

/// Solutions for one value through the window; throws CapExceeded when the window passes cap.
std::vector<std::vector<mpz_class>> solve_value(const mpz_class& value, const std::vector<unsigned long>& S,
                                                unsigned r, const mpq_class& eps, const mpz_class& cap,
                                                SMembership membership = {});

/// Full Cartesian enumeration over |w_i| <= cap, normalized like solve_value.
std::vector<std::vector<mpz_class>> brute_oracle(const mpz_class& value, const std::vector<unsigned long>& S,
                                                 unsigned r, const mpq_class& eps, const mpz_class& cap,
                                                 SMembership membership = {});

SolveResult solve(const SpecializedLRS& Lz, const SUnitConfig& cfg);

}  // namespace cyclorec
