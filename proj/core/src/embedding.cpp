#include "cyclorec/embedding.hpp"

#include <set>

#include "cyclorec/errors.hpp"

namespace cyclorec {

ComplexBall embed(const CycloElem& beta, long a, Precision prec) {
  const long m = beta.conductor();
  const auto& c = beta.coords();
  ComplexBall acc(prec);
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const long e = ((static_cast<long>(i) * a) % m + m) % m;
    acc = acc + RealBall::exact(c[i], prec) * ComplexBall::unit_root(e, m, prec);
  }
  return acc;
}

std::vector<CycloElem> galois_conjugates(const CycloElem& beta) {
  std::vector<CycloElem> out;
  for (unsigned a : beta.field()->galois_exponents()) out.push_back(beta.galois(a));
  return out;
}

mpq_class norm(const CycloElem& beta) {
  if (beta.is_zero()) return 0;
  CycloElem prod = CycloElem::one(beta.field());
  for (const auto& c : galois_conjugates(beta)) prod *= c;
  if (!prod.is_rational()) throw BadInput("norm did not reduce to a rational");
  return prod.constant();
}

mpq_class norm_by_resultant(const CycloElem& beta) {
  const auto& phi = beta.field()->cyclotomic_poly();
  QPoly p(phi.begin(), phi.end());
  QPoly b(beta.coords().begin(), beta.coords().end());
  qpoly::trim(b);
  if (b.empty()) return 0;
  // Phi_m is monic, so Res(Phi_m, b) = prod over roots of Phi_m of b(root).
  return qpoly::resultant(p, b);
}

RealBall house(const CycloElem& beta, Precision prec) {
  RealBall best(prec);
  bool first = true;
  for (unsigned a : beta.field()->galois_exponents()) {
    RealBall v = embed(beta, a, prec).abs();
    best = first ? v : max(best, v);
    first = false;
  }
  return best;
}

QPoly characteristic_poly(const CycloElem& beta) {
  // Coefficients live in the field until the product is complete.
  auto field = beta.field();
  std::vector<CycloElem> poly{CycloElem::one(field)};
  for (const auto& conj : galois_conjugates(beta)) {
    std::vector<CycloElem> next(poly.size() + 1, CycloElem::zero(field));
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * conj;
    }
    poly = std::move(next);
  }
  QPoly out;
  for (const auto& c : poly) {
    if (!c.is_rational()) throw BadInput("characteristic polynomial is not rational");
    out.push_back(c.constant());
  }
  return out;
}

MinPoly min_poly(const CycloElem& beta) {
  QPoly cp = characteristic_poly(beta);
  // cp is a power of the minimal polynomial; its square-free part is the minimal polynomial.
  QPoly g = qpoly::gcd(cp, qpoly::derivative(cp));
  QPoly mp = qpoly::monic(qpoly::quo(cp, g));

  CycloElem acc = CycloElem::zero(beta.field());
  for (size_t i = mp.size(); i-- > 0;)
    acc = acc * beta + CycloElem::rational(beta.field(), mp[i]);
  if (!acc.is_zero()) throw BadInput("minimal polynomial candidate does not vanish");

  return MinPoly{qpoly::primitive_integer(mp)};
}

Heights heights(const CycloElem& beta, Precision prec) {
  if (beta.is_zero()) throw ZeroElement("height of zero");
  MinPoly mp = min_poly(beta);
  std::set<CycloElem> roots;
  for (const auto& c : galois_conjugates(beta)) roots.insert(c);
  if (static_cast<int>(roots.size()) != mp.degree())
    throw BadInput("conjugate count does not match minimal polynomial degree");

  const RealBall one = RealBall::exact(mpq_class(1), prec);
  RealBall H = RealBall::exact(mpz_class(abs(mp.leading())), prec);
  RealBall logsum = log(H);
  for (const auto& r : roots) {
    RealBall m = max(one, complex_value(r, prec).abs());
    H = H * m;
    logsum = logsum + log(m);
  }
  RealBall h = logsum / RealBall::exact(mpq_class(mp.degree()), prec);
  return {H, h};
}

bool is_root_of_unity(const CycloElem& beta) {
  if (beta.is_zero()) return false;
  return beta.pow(beta.field()->torsion_order()) == CycloElem::one(beta.field());
}

int sign_of_real(const CycloElem& x) {
  if (x.is_zero()) return 0;
  for (Precision prec = 64;; prec *= 2) {
    RealBall v = complex_value(x, prec).re();
    if (v.certainly_positive()) return 1;
    if (v.certainly_negative()) return -1;
    if (prec > (Precision{1} << 24)) throw BadInput("sign refinement did not terminate");
  }
}

Ordering abs_compare(const CycloElem& beta, const CycloElem& gamma) {
  const int s = sign_of_real(abs2_elem(beta) - abs2_elem(gamma));
  return s < 0 ? Ordering::Less : s > 0 ? Ordering::Greater : Ordering::Equal;
}

namespace {

// Positive enclosure of a nonzero totally real value whose relative width is
// below 2^-(prec/2); cancellation in the embedding is absorbed by raising precision.
RealBall tight_positive(const CycloElem& x, Precision prec) {
  for (Precision p = prec;; p *= 2) {
    RealBall v = complex_value(x, p).re();
    if (v.certainly_positive()) {
      mpfr_t w;
      mpfr_init2(w, p);
      mpfr_sub(w, v.hi_ptr(), v.lo_ptr(), MPFR_RNDU);
      mpfr_div(w, w, v.lo_ptr(), MPFR_RNDU);
      const bool tight = mpfr_cmp_si_2exp(w, 1, -static_cast<long>(prec / 2)) <= 0;
      mpfr_clear(w);
      if (tight) return v;
    }
    if (p > (Precision{1} << 24)) throw BadInput("enclosure refinement did not terminate");
  }
}

}  // namespace

RealBall abs_ball(const CycloElem& beta, Precision prec) {
  if (beta.is_zero()) return RealBall::exact(mpq_class(0), prec);
  return sqrt(tight_positive(abs2_elem(beta), prec));
}

RealBall log_abs_ball(const CycloElem& beta, Precision prec) {
  if (beta.is_zero()) throw ZeroElement("log of zero");
  RealBall v = tight_positive(abs2_elem(beta), prec);
  return RealBall::exact(mpq_class(1, 2), v.precision()) * log(v);
}

}  // namespace cyclorec
