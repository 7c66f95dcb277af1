#include "cyclorec/bounds.hpp"

#include <set>

#include "cyclorec/embedding.hpp"
#include "cyclorec/errors.hpp"
#include "cyclorec/parallel.hpp"

namespace cyclorec {
namespace {

RealBall ball(const mpq_class& q, Precision prec) { return RealBall::exact(q, prec); }
RealBall ball(long v, Precision prec) { return RealBall::exact(mpz_class(v), prec); }

RealBall log_plus(const RealBall& x) { return max(ball(0, x.precision()), log(x)); }

// Principal logarithm modulus sqrt(log^2|z| + arg^2), with the argument clipped to pi
// when the enclosure straddles the branch cut.
RealBall log_modulus(const CycloElem& z, Precision prec) {
  const ComplexBall v = complex_value(z, prec);
  RealBall arg = abs(atan2(v.im(), v.re()));
  const RealBall pi = RealBall::pi(prec);
  if (!arg.is_finite()) arg = pi;
  arg = min(arg, pi);
  return sqrt(sqr(log_abs_ball(z, prec)) + sqr(arg));
}

// Sum of log+ over the embeddings divided by D; the height of an algebraic integer.
RealBall integral_height(const CycloElem& beta, Precision prec) {
  const auto& field = *beta.field();
  RealBall s = ball(0, prec);
  for (unsigned a : field.galois_exponents()) s = s + max(ball(0, prec), log_abs_ball(beta.galois(a), prec));
  return s / ball(field.degree(), prec);
}

RealBall log_A(const CycloElem& z, const RealBall& height, Precision prec) {
  const RealBall D = ball(z.field()->degree(), prec);
  return max(height, max(log_modulus(z, prec) / D, ball(mpq_class(4, 25), prec) / D));
}

RealBall log_A(const CycloElem& z, Precision prec) { return log_A(z, heights(z, prec).h, prec); }

void check_input(const MatveevInput& inp) {
  if (inp.m < 2) throw BadInput("matveev: need at least two logarithms");
  if (inp.D < 1) throw BadInput("matveev: field degree must be positive");
  if (inp.logA.size() != inp.m) throw BadInput("matveev: logA length differs from m");
  for (const auto& a : inp.logA)
    if (!a.certainly_positive()) throw BadInput("matveev: logA entries must be positive");
  if (inp.B.certainly_less(ball(1, inp.B.precision()))) throw BadInput("matveev: B must be at least 1");
  if (inp.kappa != 1 && inp.kappa != 2) throw BadInput("matveev: kappa must be 1 or 2");
}

NamedConstant named(std::string name, RealBall v, std::string formula) {
  return {std::move(name), std::move(v), std::move(formula)};
}

struct Running {
  std::optional<RealBall> value;
  void max_with(const RealBall& x) { value = value ? max(*value, x) : x; }
  void min_with(const RealBall& x) { value = value ? min(*value, x) : x; }
};

void add_dominance(BoundReport& rep, const SpecializedLRS& Lz) {
  const auto& d = Lz.dominance();
  rep.constants.push_back(named("delta", *d.delta, "max(0, max_{j>=2} log|alpha_j| / log|alpha_1|)"));
  rep.constants.push_back(named("rho", *d.rho, "max_{j>=2} |alpha_j| / |alpha_1|"));
  rep.constants.push_back(named("C7", *d.C7, "sum_{j>=2} |f_j|"));
  rep.constants.push_back(named("C8", *d.C8, "C7 / |f_1|"));
}

void require_dominant(const SpecializedLRS& Lz) {
  if (!Lz.has_single_dominant()) throw StructureViolation("bounds need a unique dominant root");
}

void check_facts(NRange range, size_t count) {
  if (range.hi < range.lo) throw BadInput("empty n range");
  if (count != range.hi - range.lo + 1) throw BadInput("factorization count does not match the n range");
}

// Rate (1 - delta) log|alpha_1| of the remainder envelope.
RealBall decay_rate(const SpecializedLRS& Lz) {
  const auto& d = Lz.dominance();
  const Precision p = d.delta->precision();
  return (ball(1, p) - *d.delta) * log(*d.abs_alpha1);
}

}  // namespace

RealBall matveev_explicit(const MatveevInput& inp, Precision prec) {
  check_input(inp);
  const RealBall m = ball(inp.m, prec), D = ball(inp.D, prec), e = RealBall::euler_e(prec);
  mpz_class p30;
  mpz_ui_pow_ui(p30.get_mpz_t(), 30, inp.m + 4);
  mpz_class m1_5;
  mpz_ui_pow_ui(m1_5.get_mpz_t(), inp.m + 1, 5);
  mpz_class Dp;
  mpz_ui_pow_ui(Dp.get_mpz_t(), inp.D, inp.m + 2);
  RealBall v = ball(4, prec) * RealBall::exact(p30, prec) * RealBall::exact(m1_5, prec) *
               sqrt(ball(inp.m + 1, prec)) * RealBall::exact(Dp, prec) * log(e * D) * log(e * m * inp.B);
  for (const auto& a : inp.logA) v = v * a;
  return -v;
}

RealBall matveev_linear_form(const MatveevInput& inp, const std::optional<RealBall>& C) {
  if (!C) throw MissingConstant("linear form bound needs a configured constant C(m, kappa)");
  check_input(inp);
  if (!C->certainly_positive()) throw BadInput("linear form constant must be positive");
  const Precision prec = C->precision();
  const RealBall D = ball(inp.D, prec), e = RealBall::euler_e(prec);
  RealBall v = *C * D * log(e * D) * log(e * inp.B);
  for (const auto& a : inp.logA) v = v * (D * a);
  return -v;
}

RealBall resolve_n_bound(const RealBall& x) {
  if (!x.certainly_positive()) throw BadInput("resolve_n_bound needs x > 0");
  const Precision prec = x.precision();
  return max(RealBall::euler_e(prec), ball(2, prec) * x * log(x));
}

std::string to_string(Pipeline p) {
  switch (p) {
    case Pipeline::GreatestPrime: return "greatest_prime";
    case Pipeline::SPart: return "s_part";
    case Pipeline::SUnit: return "s_unit";
  }
  return "?";
}

const NamedConstant* BoundReport::find(const std::string& name) const {
  for (const auto& c : constants)
    if (c.name == name) return &c;
  return nullptr;
}

std::optional<std::string> BoundReport::threshold(const std::string& name) const {
  for (const auto& [k, v] : thresholds)
    if (k == name) return v;
  return std::nullopt;
}

std::vector<IdealFactorization> factor_terms(const SpecializedLRS& Lz, NRange range,
                                             const ReportOptions& opt) {
  if (range.hi < range.lo) throw BadInput("empty n range");
  const auto terms = terms_recurrence(Lz, range.hi);
  return parallel_map(range.hi - range.lo + 1, opt.workers, [&](size_t i) {
    return factor_principal(terms[range.lo + i], opt.deadline);
  });
}

// ---------------------------------------------------------------------------------------------

namespace {

struct T1Chain {
  RealBall C9, C10, C11, C13, slack;
};

struct T1Work {
  BoundRow row;
  std::optional<T1Chain> chain;
};

}  // namespace

BoundReport greatest_prime_report(const SpecializedLRS& Lz, NRange range,
                            const std::vector<IdealFactorization>& facts, Precision prec) {
  require_dominant(Lz);
  check_facts(range, facts.size());
  const auto structure = desired_structure_check(Lz, range.hi);

  const unsigned D = Lz.field()->degree();
  const RealBall logA2 = log_A(Lz.fvals()[0], prec);
  const RealBall logA3 = log_A(Lz.avals()[0], prec);
  const RealBall rate = decay_rate(Lz);
  const RealBall logC8 = log_plus(*Lz.dominance().C8);

  auto work = parallel_map(facts.size(), 1, [&](size_t i) {
    T1Work w;
    const auto& fact = facts[i];
    BoundRow& row = w.row;
    row.n = range.lo + i;
    row.abs_norm = fact.norm_abs;
    row.complete = fact.complete();
    if (!row.complete) return w;
    const auto gp = greatest_prime_and_radical(fact);
    row.largest_norm = gp.largest_norm;
    row.radical_norm = gp.radical_norm;
    if (row.n < 2) return w;
    const RealBall logn = log(ball(long(row.n), prec));
    const RealBall nb = ball(long(row.n), prec);
    row.c1 = log(RealBall::exact(gp.largest_norm, prec)) * logn / nb;
    row.c2 = log(RealBall::exact(gp.radical_norm, prec)) * logn / nb;
    if (fact.norm_abs <= 1) return w;

    const CycloElem& U = fact.element;
    const RealBall logN = log(RealBall::exact(fact.norm_abs, prec));
    const RealBall logA1 = log_A(U, integral_height(U, prec), prec);
    // Exponents (1, -1, -n) on (U_n, f_1, alpha_1).
    const RealBall B = max(max(ball(1, prec), nb), max(logA1, logA2) / logA3);
    const RealBall lower = matveev_explicit({3, D, {logA1, logA2, logA3}, B, 2}, prec);
    T1Chain c{log(house(U, prec)) / logN, logA1 / logN, -lower / (logA1 * logn), ball(0, prec), ball(0, prec)};
    c.C13 = (c.C11 + logC8 / (logA1 * logn)) / rate;
    c.slack = c.C13 * logA1 * logn / nb;
    w.chain = c;
    return w;
  });

  BoundReport rep;
  rep.pipeline = Pipeline::GreatestPrime;
  add_dominance(rep, Lz);
  Running C9, C10, C11, C13, slack, c1min, c2min;
  bool all_complete = true;
  for (auto& w : work) {
    all_complete = all_complete && w.row.complete;
    if (w.row.c1) c1min.min_with(*w.row.c1);
    if (w.row.c2) c2min.min_with(*w.row.c2);
    if (w.chain) {
      C9.max_with(w.chain->C9);
      C10.max_with(w.chain->C10);
      C11.max_with(w.chain->C11);
      C13.max_with(w.chain->C13);
      slack.min_with(w.chain->slack);
    }
    rep.rows.push_back(std::move(w.row));
  }
  rep.constants.push_back(named("C12", rate, "(1 - delta) log|alpha_1|"));
  if (C9.value) {
    rep.constants.push_back(named("C9", *C9.value, "max_n log house(U_n) / log|N(U_n)|"));
    rep.constants.push_back(named("C10", *C10.value, "max_n log A_1 / log|N(U_n)|, log A_1 = max(h, |Log U_n|/D, 0.16/D)"));
    rep.constants.push_back(named("C11", *C11.value, "max_n -lower(3; U_n, f_1, alpha_1) / (log A_1 log n)"));
    rep.constants.push_back(named("C13", *C13.value, "max_n (C11 + log+ C8 / (log A_1 log n)) / C12"));
    rep.constants.push_back(named("chain_slack", *slack.value, "min_n C13 log A_1 log n / n, above 1 when the chain holds"));
  }
  if (c1min.value) rep.constants.push_back(named("c1_min", *c1min.value, "min_n log P log n / n"));
  if (c2min.value) rep.constants.push_back(named("c2_min", *c2min.value, "min_n log N(radical) log n / n"));
  rep.verdict = all_complete && c1min.value && c1min.value->certainly_positive() &&
                c2min.value->certainly_positive();
  rep.thresholds.emplace_back("n0", std::to_string(std::max<unsigned long>(range.lo, 2)));
  rep.thresholds.emplace_back("n_star", std::to_string(structure.n_star));
  return rep;
}

BoundReport greatest_prime_report(const SpecializedLRS& Lz, NRange range, const ReportOptions& opt) {
  require_dominant(Lz);
  return greatest_prime_report(Lz, range, factor_terms(Lz, range, opt), opt.prec);
}

// ---------------------------------------------------------------------------------------------

namespace {

struct T2Chain {
  RealBall C14, ratio, slack;
};

struct T2Work {
  BoundRow row;
  std::optional<T2Chain> chain;
};

}  // namespace

BoundReport s_part_report(const SpecializedLRS& Lz, const std::vector<PrimeIdeal>& S, NRange range,
                            const std::vector<IdealFactorization>& facts, Precision prec) {
  require_dominant(Lz);
  if (S.empty()) throw EmptyS("S must not be empty");
  check_facts(range, facts.size());
  const auto structure = desired_structure_check(Lz, range.hi);

  const unsigned D = Lz.field()->degree();
  const RealBall logA1 = log_A(Lz.fvals()[0], prec);
  const RealBall logA2 = log_A(Lz.avals()[0], prec);
  const RealBall rate = decay_rate(Lz);
  const RealBall logC8 = log_plus(*Lz.dominance().C8);

  auto work = parallel_map(facts.size(), 1, [&](size_t i) {
    T2Work w;
    const auto& fact = facts[i];
    BoundRow& row = w.row;
    row.n = range.lo + i;
    row.abs_norm = fact.norm_abs;
    row.complete = fact.complete();
    if (row.complete) {
      const auto gp = greatest_prime_and_radical(fact);
      row.largest_norm = gp.largest_norm;
      row.radical_norm = gp.radical_norm;
    }
    SPartResult sp;
    try {
      sp = s_part(fact, S);
    } catch (const IncompleteFactorization&) {
      return w;
    }
    row.s_part_norm = sp.s_part_norm;
    row.split_case = sp.cofactor_norm > sp.s_part_norm ? "cofactor" : "S";
    if (fact.norm_abs <= 1) {
      row.e_n = ball(0, prec);
      return w;
    }
    const RealBall logN = log(RealBall::exact(fact.norm_abs, prec));
    row.e_n = log(RealBall::exact(sp.s_part_norm, prec)) / logN;
    if (row.n < 2) return w;

    const CycloElem& U = fact.element;
    const RealBall nb = ball(long(row.n), prec);
    const RealBall logA3 = log_A(U, integral_height(U, prec), prec);
    // Exponents (-1, -n, 1) on (f_1, alpha_1, U_n), U_n last.
    const RealBall B = max(ball(1, prec), max(logA1, nb * logA2) / logA3);
    const RealBall lower = matveev_explicit({3, D, {logA1, logA2, logA3}, B, 2}, prec);
    w.chain = T2Chain{B * logA3 / nb, logA3 / logN, (logC8 - lower) / (rate * nb)};
    return w;
  });

  BoundReport rep;
  rep.pipeline = Pipeline::SPart;
  add_dominance(rep, Lz);
  rep.constants.push_back(named("C12", rate, "(1 - delta) log|alpha_1|"));
  Running C14, ratio, slack;
  bool all_known = true;
  for (auto& w : work) {
    all_known = all_known && w.row.e_n.has_value();
    if (w.chain) {
      C14.max_with(w.chain->C14);
      ratio.max_with(w.chain->ratio);
      slack.min_with(w.chain->slack);
    }
    rep.rows.push_back(std::move(w.row));
  }
  if (C14.value) {
    rep.constants.push_back(named("C14", *C14.value, "max_n B log A_3 / n, A_3 for U_n"));
    rep.constants.push_back(named("A3_ratio", *ratio.value, "max_n log A_3 / log|N(U_n)|"));
    rep.constants.push_back(named("chain_slack", *slack.value, "min_n (log+ C8 - lower(3; f_1, alpha_1, U_n)) / (C12 n)"));
  }

  // C4: the least n0 after which every e_n is certainly below 1.
  std::optional<size_t> first_ok;
  if (all_known) {
    const RealBall one = ball(1, prec);
    size_t k = rep.rows.size();
    while (k > 0 && rep.rows[k - 1].e_n->certainly_less(one)) --k;
    if (k < rep.rows.size()) first_ok = k;
  }
  if (first_ok) {
    Running emax;
    for (size_t i = *first_ok; i < rep.rows.size(); ++i) emax.max_with(*rep.rows[i].e_n);
    rep.constants.push_back(named("max_e_n", *emax.value, "max_{n >= C4} e_n"));
    rep.constants.push_back(named("C3", ball(1, prec) - *emax.value, "1 - max_{n >= C4} e_n"));
    rep.thresholds.emplace_back("C4", std::to_string(rep.rows[*first_ok].n));
  } else {
    rep.thresholds.emplace_back("C4", "none");
  }
  rep.verdict = first_ok.has_value();
  rep.thresholds.emplace_back("n_star", std::to_string(structure.n_star));
  return rep;
}

BoundReport s_part_report(const SpecializedLRS& Lz, const std::vector<PrimeIdeal>& S, NRange range,
                            const ReportOptions& opt) {
  require_dominant(Lz);
  if (S.empty()) throw EmptyS("S must not be empty");
  return s_part_report(Lz, S, range, factor_terms(Lz, range, opt), opt.prec);
}

// ---------------------------------------------------------------------------------------------

SUnitBound s_unit_bound(const SpecializedLRS& Lz, const SUnitBoundInput& in) {
  require_dominant(Lz);
  if (in.primes.empty()) throw EmptyS("S must not be empty");
  if (in.r < 1) throw BadInput("r must be at least 1");
  if (sgn(in.eps) <= 0) throw BadInput("eps must be positive");
  std::set<unsigned long> seen;
  for (unsigned long p : in.primes) {
    if (p < 2 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0)
      throw BadInput("S entry " + std::to_string(p) + " is not prime");
    if (!seen.insert(p).second) throw BadInput("duplicate prime in S");
  }
  if (!in.matveev_C) throw MissingConstant("solver bound needs matveev_C for " +
                                           std::to_string(in.primes.size() + 3) + " logarithms");

  const Precision prec = in.prec;
  const auto& d = Lz.dominance();
  const unsigned D = Lz.field()->degree();
  const long s = static_cast<long>(in.primes.size());
  const long r = in.r;
  const RealBall zero = ball(0, prec), one = ball(1, prec), two = ball(2, prec);
  const RealBall la1 = log(*d.abs_alpha1);
  const RealBall f1 = *d.abs_f1;
  const RealBall C8 = *d.C8;
  const RealBall rho = *d.rho;
  const mpq_class t = in.eps / (1 + in.eps);

  SUnitBound out;
  auto push = [&](std::string name, const RealBall& v, std::string formula) {
    out.constants.push_back(named(std::move(name), v, std::move(formula)));
  };

  const RealBall theta = max(exp(-ball(t, prec) * la1), rho);
  const RealBall C19 = ball(r - 1, prec) * max(one, ball(2 * r, prec) / f1);
  const RealBall C20 = C19 + ball(2 * r, prec) * C8;
  push("theta", theta, "max(|alpha_1|^(-eps/(1+eps)), rho)");
  push("C19", C19, "(r - 1) max(1, 2r / |f_1|)");
  push("C20", C20, "C19 + 2r C8");

  const RealBall gap = -log(theta);
  const RealBall n_half = rho.certainly_positive() ? max(zero, log(two * C8) / -log(rho)) : zero;
  const RealBall n_far = max(zero, log(two * C20) / gap);
  push("n_half", n_half, "log(2 C8) / -log rho, where C8 rho^n <= 1/2");
  push("n_far", n_far, "log(2 C20) / -log theta, where C20 theta^n > 1/2");

  MatveevInput lin;
  lin.m = static_cast<unsigned>(s + 3);
  lin.D = D;
  for (unsigned long p : in.primes) lin.logA.push_back(log(ball(long(p), prec)));
  lin.logA.push_back(log_A(Lz.fvals()[0], prec));
  lin.logA.push_back(log_A(Lz.avals()[0], prec));
  lin.logA.push_back(RealBall::pi(prec) / ball(D, prec));
  lin.B = one;
  lin.kappa = Lz.field()->conductor() <= 2 ? 1 : 2;
  // With B = 1 the factor log(eB) is one, leaving the n-independent part.
  const RealBall K = -matveev_linear_form(lin, in.matveev_C);
  // max |b_j| <= C21 n: exponents of w_r, the n on alpha_1 and the multiple of log(-1), at most n + 3.
  const RealBall C21 = max(max(ball(4, prec), ball(s + 2, prec)), (log_plus(two * f1) + la1) / log(two));
  push("C21", C21, "max(4, s + 2, (log+(2|f_1|) + log|alpha_1|) / log 2)");
  push("K", K, "C(m, kappa) D prod(D logA_i) log(eD), m = s + 3");

  const RealBall a = (log(two * C20) + K * (one + log(C21))) / gap;
  const RealBall b = K / gap;
  const RealBall n_lin = resolve_n_bound(max(a, zero) + b);
  push("n_lin", n_lin, "resolve(a+ + b), n gap < log(2 C20) + K (1 + log C21 + log n)");

  const RealBall N5 = max(max(n_half, n_far), max(n_lin, one));
  push("N5", N5, "max(n_half, n_far, n_lin, 1)");

  RealBall logW = log(two * (f1 + *d.C7)) + N5 * la1;
  if (r >= 2) {
    const mpq_class inv = (1 + in.eps) / in.eps;
    logW = max(logW, ball(inv, prec) * log(ball(2 * (r - 1), prec)));
  }
  push("log_W", logW, "log max(2 (|f_1| + C7) |alpha_1|^N5, (2(r-1))^((1+eps)/eps))");

  out.n_bound = N5;
  out.log_C5 = max(log(N5), logW);
  push("log_C5", out.log_C5, "log max(N5, W)");
  return out;
}

}  // namespace cyclorec
