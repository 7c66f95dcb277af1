#pragma once

// Prime ideals of Z[zeta_m] as pairs (p, g(zeta)) and factorization of principal ideals.

#include <gmpxx.h>

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cyclorec/field.hpp"
#include "cyclorec/fppoly.hpp"
#include "cyclorec/intfactor.hpp"

namespace cyclorec {

class PrimeIdeal {
 public:
  PrimeIdeal(FieldPtr field, mpz_class p, unsigned f, unsigned e, fp::Poly gen);

  const FieldPtr& field() const noexcept { return field_; }
  const mpz_class& p() const noexcept { return p_; }
  unsigned residue_degree() const noexcept { return f_; }
  unsigned ramification() const noexcept { return e_; }
  /// Monic irreducible factor of Phi_m modulo p, coefficients in [0, p).
  const fp::Poly& generator() const noexcept { return gen_; }
  const mpz_class& norm() const noexcept { return norm_; }

  /// Membership test for an integral element.
  bool contains(const CycloElem& beta) const;
  /// Divide out one factor of this ideal from an element it contains.
  CycloElem divide_once(const CycloElem& beta) const;

  /// "p:f:e:g0 g1 ..." with generator coefficients low degree first.
  std::string serialize() const;

  bool operator==(const PrimeIdeal& o) const;
  bool operator<(const PrimeIdeal& o) const;

 private:
  FieldPtr field_;
  mpz_class p_;
  unsigned f_, e_;
  fp::Poly gen_;
  mpz_class norm_;
  // pi * cofactor_ = N(pi) with v_P(pi) = 1 and pi outside every other prime above p.
  std::shared_ptr<const CycloElem> cofactor_;
};

/// Prime ideals above p, sorted canonically; memoized per (m, p).
const std::vector<PrimeIdeal>& split_prime(const FieldPtr& field, const mpz_class& p);

/// v_P(beta) for a nonzero integral beta.
unsigned valuation(const CycloElem& beta, const PrimeIdeal& ideal);

struct IdealFactorization {
  CycloElem element;
  std::vector<std::pair<PrimeIdeal, unsigned>> factors;
  mpz_class norm_abs;
  mpz_class unfactored = 1;  // part of norm_abs the integer factorizer could not split in budget
  bool certified = true;

  bool complete() const { return unfactored == 1; }
  /// "(p:f:e:g)^v * ..." or "1" for a unit.
  std::string serialize() const;
};

/// Factor the principal ideal (beta); an exhausted budget yields complete() == false.
IdealFactorization factor_principal(const CycloElem& beta, const Deadline& deadline = std::nullopt);

struct GreatestPrime {
  mpz_class largest_norm;  // largest N(P) over the support, 1 for units
  mpz_class radical_norm;  // product of the distinct N(P)
};

GreatestPrime greatest_prime_and_radical(const IdealFactorization& fact);

struct SPartResult {
  mpz_class s_part_norm;
  mpz_class cofactor_norm;
  std::vector<std::pair<PrimeIdeal, unsigned>> exponents;  // one entry per member of S
};

SPartResult s_part(const IdealFactorization& fact, const std::vector<PrimeIdeal>& S);

}  // namespace cyclorec
