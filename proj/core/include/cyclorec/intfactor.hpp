#pragma once

// Budgeted factorization of rational integers: trial division, Pollard-Brent rho,
// and primality decided by deterministic Miller-Rabin or a Pocklington certificate.

#include <gmpxx.h>

#include <chrono>
#include <optional>
#include <utility>
#include <vector>

namespace cyclorec {

enum class Primality { Composite, Prime, ProbablePrime };

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

Deadline deadline_after(std::optional<std::chrono::milliseconds> budget);

/// Prime is a proof (deterministic bases below 3.3e24, Pocklington above);
/// ProbablePrime means every test passed but no certificate was found in time.
Primality primality(const mpz_class& n, const Deadline& deadline = std::nullopt);

struct IntFactorization {
  std::vector<std::pair<mpz_class, unsigned>> factors;  // ascending primes
  mpz_class unfactored = 1;  // composite part left when the budget ran out
  bool certified = true;     // every listed prime carries a proof

  bool complete() const { return unfactored == 1; }
};

/// Factor |n| (n != 0). Never throws on timeout; the remainder lands in `unfactored`.
IntFactorization factor_integer(const mpz_class& n, const Deadline& deadline = std::nullopt);

/// Primes up to `bound`, cached.
const std::vector<unsigned>& small_primes(unsigned bound = 1000000);

/// p-adic valuation of a nonzero integer.
unsigned valuation_p(const mpz_class& n, const mpz_class& p);

}  // namespace cyclorec
