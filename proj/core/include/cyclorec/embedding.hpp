#pragma once

// Norms, conjugates, minimal polynomials and the complex embeddings of Q(zeta_m).

#include <gmpxx.h>

#include <vector>

#include "cyclorec/ball.hpp"
#include "cyclorec/field.hpp"
#include "cyclorec/qpoly.hpp"

namespace cyclorec {

/// sigma_a(beta) under the fixed embedding zeta_m -> exp(2 pi i / m).
ComplexBall embed(const CycloElem& beta, long a, Precision prec);
inline ComplexBall complex_value(const CycloElem& beta, Precision prec) { return embed(beta, 1, prec); }

/// [sigma_a(beta) for a in galois_exponents]; the first entry is beta.
std::vector<CycloElem> galois_conjugates(const CycloElem& beta);

/// Exact signed norm: the product of all conjugates.
mpq_class norm(const CycloElem& beta);
/// The same value through Res(Phi_m, b) where b is the coordinate polynomial.
mpq_class norm_by_resultant(const CycloElem& beta);

/// Enclosure of max_a |sigma_a(beta)|.
RealBall house(const CycloElem& beta, Precision prec);

struct MinPoly {
  ZPoly coeffs;  // primitive, positive leading coefficient, lowest degree first
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const mpz_class& leading() const { return coeffs.back(); }
};

/// Characteristic polynomial of multiplication by beta, prod_a (X - sigma_a(beta)).
QPoly characteristic_poly(const CycloElem& beta);
MinPoly min_poly(const CycloElem& beta);

struct Heights {
  RealBall H;  // |a_d| prod max(1, |beta_i|)
  RealBall h;  // absolute logarithmic height
};

/// Throws ZeroElement for beta = 0.
Heights heights(const CycloElem& beta, Precision prec);

bool is_root_of_unity(const CycloElem& beta);

/// Sign of an element fixed by complex conjugation, decided by refinement.
int sign_of_real(const CycloElem& real_elem);

enum class Ordering { Less, Equal, Greater };

/// Compare |beta| with |gamma| through the totally real elements beta * conj(beta).
Ordering abs_compare(const CycloElem& beta, const CycloElem& gamma);

/// |beta|^2 as an exact element of the field.
inline CycloElem abs2_elem(const CycloElem& beta) { return beta * beta.conj(); }

/// Enclosures of |beta| and log|beta| at the identity embedding.
RealBall abs_ball(const CycloElem& beta, Precision prec);
RealBall log_abs_ball(const CycloElem& beta, Precision prec);

}  // namespace cyclorec
