#pragma once

// Dense polynomials over F_p for a (possibly large) prime p; coefficients lie in [0, p).

#include <gmpxx.h>

#include <random>
#include <vector>

#include "cyclorec/qpoly.hpp"

namespace cyclorec::fp {

using Poly = std::vector<mpz_class>;  // low degree first, trimmed

Poly reduce(const ZPoly& a, const mpz_class& p);
Poly reduce(const QPoly& a, const mpz_class& p);  // throws NonIntegral on a denominator divisible by p
void trim(Poly& a);
long degree(const Poly& a);
Poly add(const Poly& a, const Poly& b, const mpz_class& p);
Poly sub(const Poly& a, const Poly& b, const mpz_class& p);
Poly mul(const Poly& a, const Poly& b, const mpz_class& p);
Poly rem(const Poly& a, const Poly& b, const mpz_class& p);
Poly quo(const Poly& a, const Poly& b, const mpz_class& p);
Poly monic(const Poly& a, const mpz_class& p);
Poly gcd(Poly a, Poly b, const mpz_class& p);
Poly powmod(const Poly& a, const mpz_class& e, const Poly& mod, const mpz_class& p);

/// Irreducible monic factors of a squarefree polynomial whose factors all have degree d.
std::vector<Poly> equal_degree_factors(const Poly& f, long d, const mpz_class& p, std::mt19937_64& rng);

/// Lexicographic order on (degree, coefficients from the top); used for stable output.
bool canonical_less(const Poly& a, const Poly& b);

}  // namespace cyclorec::fp
