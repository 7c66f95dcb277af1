#include "cyclorec/lrs.hpp"

#include <algorithm>
#include <numeric>

#include "cyclorec/embedding.hpp"
#include "cyclorec/errors.hpp"

namespace cyclorec {

ParamLRS::ParamLRS(std::vector<KPoly> f, std::vector<KPoly> alpha) : f_(std::move(f)), alpha_(std::move(alpha)) {
  if (f_.size() != alpha_.size()) throw ValidationError("f and alpha must have the same length");
  if (f_.size() < 2) throw ValidationError("order k must be at least 2");
  field_ = f_[0].field();
  for (size_t i = 0; i < f_.size(); ++i) {
    for (const KPoly* p : {&f_[i], &alpha_[i]}) {
      if (!p->field() || p->field()->conductor() != field_->conductor())
        throw ValidationError("all polynomials must share one coefficient field");
      if (p->is_zero()) throw ValidationError("nonzero polynomials required (index " + std::to_string(i + 1) + ")");
      d_ = std::max(d_, static_cast<unsigned>(p->degree()));
    }
  }
  for (size_t i = 0; i < alpha_.size(); ++i)
    for (size_t j = i + 1; j < alpha_.size(); ++j)
      if (alpha_[i] == alpha_[j])
        throw ValidationError("alpha_" + std::to_string(i + 1) + " and alpha_" + std::to_string(j + 1) + " coincide");
}

RootSpec normalize_root(unsigned m, long j) {
  if (m == 0) throw BadInput("root order must be positive");
  long r = j % static_cast<long>(m);
  if (r < 0) r += m;
  const unsigned g = std::gcd(static_cast<unsigned>(r), m);
  return {m / g, static_cast<unsigned>(r) / g};
}

unsigned working_conductor(const ParamLRS& L, unsigned root_order) {
  return std::lcm(L.coeff_field()->conductor(), root_order);
}

ExceptionalCheck in_exceptional_set(const ParamLRS& L, const CycloElem& zeta0) {
  if (!is_root_of_unity(zeta0)) throw NotRootOfUnity("parameter is not a root of unity");
  const FieldPtr K = make_field(std::lcm(L.coeff_field()->conductor(), zeta0.conductor()));
  const CycloElem zeta = zeta0.embed(K);
  ExceptionalCheck out;
  std::vector<CycloElem> av;
  for (size_t i = 0; i < L.order(); ++i) {
    const std::string idx = std::to_string(i + 1);
    if (L.f()[i](zeta).is_zero()) out.reasons.push_back("f_" + idx + "(zeta) = 0");
    av.push_back(L.alpha()[i](zeta));
    if (av.back().is_zero()) out.reasons.push_back("alpha_" + idx + "(zeta) = 0");
  }
  for (size_t i = 0; i < av.size(); ++i)
    for (size_t j = i + 1; j < av.size(); ++j)
      if (!av[i].is_zero() && !av[j].is_zero() && is_root_of_unity(av[i] / av[j]))
        out.reasons.push_back("alpha_" + std::to_string(i + 1) + "(zeta) / alpha_" + std::to_string(j + 1) +
                              "(zeta) is a root of unity");
  out.member = !out.reasons.empty();
  return out;
}

SpecializedLRS specialize(const ParamLRS& L, unsigned m, long j, Precision prec) {
  SpecializedLRS s;
  s.prec_ = prec;
  s.root_ = normalize_root(m, j);
  s.field_ = make_field(working_conductor(L, s.root_.order));
  s.zeta_ = CycloElem::root_of_unity(s.field_, s.root_.exponent, s.root_.order);
  if (auto ex = in_exceptional_set(L, s.zeta_); ex.member)
    throw ExceptionalParameter("zeta_" + std::to_string(s.root_.order) + "^" + std::to_string(s.root_.exponent) +
                                   " lies in the exceptional set",
                               ex.reasons);
  const size_t k = L.order();
  std::vector<CycloElem> fv, av;
  for (size_t i = 0; i < k; ++i) {
    fv.push_back(L.f()[i](s.zeta_));
    av.push_back(L.alpha()[i](s.zeta_));
  }
  s.original_.resize(k);
  std::iota(s.original_.begin(), s.original_.end(), 0);
  std::stable_sort(s.original_.begin(), s.original_.end(),
                   [&](size_t a, size_t b) { return abs_compare(av[a], av[b]) == Ordering::Greater; });
  for (size_t i : s.original_) {
    s.fvals_.push_back(fv[i]);
    s.avals_.push_back(av[i]);
  }

  KPoly F = KPoly::constant(CycloElem::one(s.field_));
  for (const auto& a : s.avals_) F = F * KPoly(s.field_, {-a, CycloElem::one(s.field_)});
  s.char_poly_ = F;

  auto& dom = s.dom_;
  dom.dominant_count = 1;
  while (dom.dominant_count < k && abs_compare(s.avals_[0], s.avals_[dom.dominant_count]) == Ordering::Equal)
    ++dom.dominant_count;
  if (dom.dominant_count != 1) return s;

  if (abs_compare(s.avals_[0], CycloElem::one(s.field_)) != Ordering::Greater)
    throw DegenerateGap("the dominant root has modulus at most 1");
  const RealBall log1 = log_abs_ball(s.avals_[0], prec);
  const RealBall a1 = abs_ball(s.avals_[0], prec);
  RealBall delta = RealBall::exact(mpq_class(0), prec);
  RealBall rho = delta, c7 = delta;
  for (size_t i = 1; i < k; ++i) {
    delta = max(delta, log_abs_ball(s.avals_[i], prec) / log1);
    rho = max(rho, abs_ball(s.avals_[i], prec) / a1);
    c7 = c7 + abs_ball(s.fvals_[i], prec);
  }
  dom.abs_alpha1 = a1;
  dom.abs_f1 = abs_ball(s.fvals_[0], prec);
  dom.delta = delta;
  dom.rho = rho;
  dom.C7 = c7;
  dom.C8 = c7 / *dom.abs_f1;
  return s;
}

CycloElem term_closed_form(const SpecializedLRS& Lz, unsigned long n) {
  CycloElem acc = CycloElem::zero(Lz.field());
  for (size_t i = 0; i < Lz.order(); ++i) acc += Lz.fvals()[i] * Lz.avals()[i].pow(n);
  return acc;
}

std::vector<CycloElem> terms_recurrence(const SpecializedLRS& Lz, unsigned long n_max) {
  const size_t k = Lz.order();
  std::vector<CycloElem> u;
  u.reserve(n_max + 1);
  for (unsigned long n = 0; n <= n_max && n < k; ++n) u.push_back(term_closed_form(Lz, n));
  // X^k = A_{k-1} X^{k-1} + ... + A_0 with A_i = -c_i of the monic characteristic polynomial.
  std::vector<CycloElem> A;
  for (size_t i = 0; i < k; ++i) A.push_back(-Lz.char_poly().coeff(i));
  for (unsigned long n = k; n <= n_max; ++n) {
    CycloElem next = CycloElem::zero(Lz.field());
    for (size_t i = 0; i < k; ++i) next += A[i] * u[n - k + i];
    u.push_back(std::move(next));
  }
  return u;
}

CycloElem term_recurrence(const SpecializedLRS& Lz, unsigned long n) { return terms_recurrence(Lz, n).back(); }

namespace {

void require_dominant(const SpecializedLRS& Lz) {
  if (!Lz.has_single_dominant())
    throw StructureViolation(std::to_string(Lz.dominance().dominant_count) + " roots share the maximal modulus");
}

CycloElem tail(const SpecializedLRS& Lz, unsigned long n) {
  CycloElem h = CycloElem::zero(Lz.field());
  for (size_t i = 1; i < Lz.order(); ++i) h += Lz.fvals()[i] * Lz.avals()[i].pow(n);
  return h;
}

// C8 |alpha_1|^(-n(1 - delta)).
RealBall envelope(const SpecializedLRS& Lz, unsigned long n) {
  const auto& d = Lz.dominance();
  const Precision p = Lz.precision();
  RealBall one = RealBall::exact(mpq_class(1), p);
  RealBall expo = RealBall::exact(mpz_class(n), p) * (one - *d.delta) * log(*d.abs_alpha1);
  return *d.C8 * exp(-expo);
}

}  // namespace

RemainderRatio remainder_ratio(const SpecializedLRS& Lz, unsigned long n) {
  require_dominant(Lz);
  const CycloElem h = tail(Lz, n);
  if (h.is_zero()) throw DegenerateTerm("U_" + std::to_string(n) + " equals its dominant term");
  const Precision p = Lz.precision();
  const auto& d = Lz.dominance();
  RealBall lead = *d.abs_f1 * exp(RealBall::exact(mpz_class(n), p) * log(*d.abs_alpha1));
  RemainderRatio r{abs_ball(h, p) / lead, envelope(Lz, n), false};
  r.ok = !r.bound.certainly_less(r.R_minus_1);
  return r;
}

StructureReport desired_structure_check(const SpecializedLRS& Lz, unsigned long n_check) {
  require_dominant(Lz);
  const auto& d = Lz.dominance();
  const Precision p = Lz.precision();
  const RealBall one = RealBall::exact(mpq_class(1), p);
  StructureReport rep;

  // With y = |alpha_1|^n the lower bound |f1| (y - C8 y^delta) for |U_n| has derivative
  // |f1| (1 - delta C8 y^(delta-1)), positive once delta * envelope < 1. From there on the
  // first n where the bound exceeds 1 covers the whole tail.
  unsigned long n = 0;
  while (!(envelope(Lz, n) * *d.delta).certainly_less(one)) {
    if (++n > 1000000) throw StructureViolation("dominance gap too small to certify the tail");
  }
  for (;; ++n) {
    RealBall lower = *d.abs_f1 * exp(RealBall::exact(mpz_class(n), p) * log(*d.abs_alpha1)) * (one - envelope(Lz, n));
    if (one.certainly_less(lower)) break;
    if (n > 1000000) throw StructureViolation("could not certify |U_n| > 1 on the tail");
  }
  rep.n_star = n;
  rep.checked_up_to = std::max(n_check, rep.n_star);

  for (unsigned long t = 0; t <= rep.checked_up_to; ++t) {
    const CycloElem u = term_closed_form(Lz, t);
    if (tail(Lz, t).is_zero())
      throw StructureViolation("n = " + std::to_string(t) + ": U_n equals its dominant term");
    if (sign_of_real(abs2_elem(u) - CycloElem::one(Lz.field())) < 0)
      throw StructureViolation("n = " + std::to_string(t) + ": |U_n| < 1");
  }
  rep.notes.push_back("no coincident or vanishing dominant terms for n <= " + std::to_string(rep.checked_up_to));
  rep.notes.push_back("|U_n| >= 1 exactly for n <= " + std::to_string(rep.checked_up_to) + ", and |U_n| > 1 for n >= " +
                      std::to_string(rep.n_star) + " from the dominance envelope");
  rep.notes.push_back("the nonexceptional-pair and torsion-factor conditions are checked by the scan commands");
  return rep;
}

}  // namespace cyclorec
