#pragma once

// Dense univariate polynomials with rational coefficients, lowest degree first.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace cyclorec {

using QPoly = std::vector<mpq_class>;
using ZPoly = std::vector<mpz_class>;

namespace qpoly {

void trim(QPoly& p);
int degree(const QPoly& p);  // -1 for the zero polynomial
bool is_zero(const QPoly& p);

QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const mpq_class& c);
QPoly derivative(const QPoly& a);

/// Euclidean division; throws BadInput on a zero divisor.
void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly rem(const QPoly& a, const QPoly& b);
QPoly quo(const QPoly& a, const QPoly& b);

/// Monic greatest common divisor (zero if both inputs are zero).
QPoly gcd(const QPoly& a, const QPoly& b);
QPoly monic(const QPoly& a);

/// Resultant of a and b.
mpq_class resultant(const QPoly& a, const QPoly& b);

mpq_class eval(const QPoly& p, const mpq_class& x);

/// Scale to a primitive integer polynomial with positive leading coefficient.
ZPoly primitive_integer(const QPoly& p);

std::string to_string(const ZPoly& p, const std::string& var = "X");

}  // namespace qpoly

/// Exact cyclotomic polynomial Phi_m, from X^m - 1 = prod_{d | m} Phi_d.
ZPoly cyclotomic_polynomial(unsigned m);

unsigned long euler_phi(unsigned long m);

}  // namespace cyclorec
