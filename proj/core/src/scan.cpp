#include "cyclorec/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cyclorec/embedding.hpp"
#include "cyclorec/errors.hpp"
#include "cyclorec/parallel.hpp"

namespace cyclorec {

TieScan scan_multi_dominant(const ParamLRS& L, unsigned M_max, unsigned workers) {
  if (M_max < 1) throw BadInput("M_max must be at least 1");
  std::vector<std::pair<unsigned, unsigned>> points;
  for (unsigned m = 1; m <= M_max; ++m)
    for (unsigned j = 0; j < m; ++j)
      if (std::gcd(j, m) == 1) points.emplace_back(m, j);

  struct Outcome {
    bool exceptional = false;
    size_t tie = 0;
  };
  auto results = parallel_map(points.size(), workers, [&](size_t idx) {
    auto [m, j] = points[idx];
    const FieldPtr K = make_field(working_conductor(L, m));
    const CycloElem zeta = CycloElem::root_of_unity(K, j, m);
    Outcome o;
    if (in_exceptional_set(L, zeta).member) {
      o.exceptional = true;
      return o;
    }
    std::vector<CycloElem> av;
    for (const auto& a : L.alpha()) av.push_back(a(zeta));
    size_t best = 0;
    o.tie = 1;
    for (size_t i = 1; i < av.size(); ++i) {
      Ordering c = abs_compare(av[i], av[best]);
      if (c == Ordering::Greater) {
        best = i;
        o.tie = 1;
      } else if (c == Ordering::Equal) {
        ++o.tie;
      }
    }
    return o;
  });

  TieScan scan;
  for (size_t i = 0; i < points.size(); ++i) {
    if (results[i].exceptional) {
      ++scan.exceptional_skipped;
      continue;
    }
    if (results[i].tie < 2) continue;
    scan.rows.push_back({points[i].first, points[i].second, results[i].tie});
    (results[i].tie == 2 ? scan.two_way : scan.multi_way) += 1;
  }
  return scan;
}

std::string to_string(BinomialShape s) { return s == BinomialShape::XY_minus_u ? "XY_minus_u" : "X_minus_uY"; }

BiPoly modulus_difference(const KPoly& ai, const KPoly& aj) {
  BiPoly P = BiPoly::outer(ai, ai.conj());
  P -= BiPoly::outer(aj, aj.conj());
  return P;
}

namespace {

// Polynomials C_e(w) collecting the coefficient of T^e after X = w T^s, Y = T^(+-r).
std::vector<KPoly> substitution_coefficients(const BiPoly& P, long r, long s, bool mixed) {
  std::map<long, std::map<long, CycloElem>> by_exp;
  for (const auto& [k, c] : P.terms()) {
    const long e = k.first * s + (mixed ? -k.second * r : k.second * r);
    by_exp[e][k.first] = c;
  }
  std::vector<KPoly> out;
  for (const auto& [e, coeffs] : by_exp) {
    std::vector<CycloElem> v(static_cast<size_t>(coeffs.rbegin()->first + 1), CycloElem::zero(P.field()));
    for (const auto& [a, c] : coeffs) v[static_cast<size_t>(a)] = c;
    out.emplace_back(P.field(), std::move(v));
  }
  return out;
}

// Roots of unity w (as exponent pairs a/N in lowest terms) with G(w) = 0.
std::vector<std::pair<long, unsigned long>> torsion_roots(const KPoly& G) {
  std::vector<std::pair<long, unsigned long>> roots;
  if (G.degree() < 1) return roots;
  const unsigned M = G.field()->conductor();
  const unsigned long phiM = euler_phi(M);
  const unsigned long cap = static_cast<unsigned long>(G.degree()) * phiM;
  // phi(N) >= sqrt(N / 2), and phi(N) <= phi(lcm(M, N)) <= deg G * phi(M).
  const unsigned long n_max = 2 * cap * cap + 2;
  std::vector<ComplexBall> coeff_vals;
  for (const auto& c : G.coeffs()) coeff_vals.push_back(complex_value(c, 96));
  for (unsigned long N = 1; N <= n_max; ++N) {
    const unsigned long L = std::lcm(static_cast<unsigned long>(M), N);
    // [Q(zeta_L) : Q(zeta_M)] cannot exceed deg G for a root of G.
    if (euler_phi(static_cast<unsigned>(L)) / phiM > static_cast<unsigned long>(G.degree())) continue;
    FieldPtr big;
    KPoly Gbig;
    for (unsigned long a = 0; a < N; ++a) {
      if (std::gcd(a, N) != 1) continue;
      const ComplexBall w = ComplexBall::unit_root(static_cast<long>(a), N, 96);
      ComplexBall acc = coeff_vals.back();
      for (size_t i = coeff_vals.size() - 1; i-- > 0;) acc = acc * w + coeff_vals[i];
      if (!acc.contains_zero()) continue;
      if (!big) {
        big = make_field(static_cast<unsigned>(L));
        Gbig = G.embed(big);
      }
      if (Gbig(CycloElem::root_of_unity(big, static_cast<long>(a), N)).is_zero())
        roots.emplace_back(static_cast<long>(a), N);
    }
  }
  return roots;
}

}  // namespace

TorsionFactorVerdict torsion_factor_check(const KPoly& ai, const KPoly& aj, unsigned D_max) {
  if (ai.is_zero() || aj.is_zero()) throw BadInput("torsion_factor_check needs nonzero polynomials");
  const FieldPtr& K = ai.field();
  const BiPoly P = modulus_difference(ai, aj);
  TorsionFactorVerdict v;
  if (P.is_zero()) {
    // Every binomial divides the zero polynomial; report the simplest.
    v.found = true;
    v.witnesses.push_back({1, 1, CycloElem::one(K), 0, 1, BinomialShape::XY_minus_u});
    return v;
  }
  for (long r = 1; r <= static_cast<long>(D_max); ++r) {
    for (long s = 1; s <= static_cast<long>(D_max); ++s) {
      if (std::gcd(r, s) != 1) continue;
      for (bool mixed : {true, false}) {
        KPoly G(K);
        for (const auto& c : substitution_coefficients(P, r, s, mixed)) G = gcd(G, c);
        // Drop the factor w^k; w = 0 never yields a unit.
        std::vector<CycloElem> gc = G.coeffs();
        size_t lead_zeros = 0;
        while (lead_zeros < gc.size() && gc[lead_zeros].is_zero()) ++lead_zeros;
        G = KPoly(K, std::vector<CycloElem>(gc.begin() + static_cast<long>(lead_zeros), gc.end()));
        std::vector<std::pair<long, unsigned long>> seen;
        for (auto [a, N] : torsion_roots(G)) {
          // u = w^r = exp(2 pi i a r / N).
          const long num = a * r;
          const unsigned long g = std::gcd(static_cast<unsigned long>(num % static_cast<long>(N)), N);
          const long un = (num % static_cast<long>(N)) / static_cast<long>(g);
          const unsigned long ud = N / g;
          if (std::find(seen.begin(), seen.end(), std::make_pair(un, ud)) != seen.end()) continue;
          seen.emplace_back(un, ud);
          if (K->torsion_order() % ud != 0)
            throw UniverseTooSmall("torsion factor needs exp(2 pi i " + std::to_string(un) + "/" + std::to_string(ud) +
                                   ") outside Q(zeta_" + std::to_string(K->conductor()) + ")");
          const CycloElem u = CycloElem::root_of_unity(K, un, ud);
          const BinomialShape shape = mixed ? BinomialShape::XY_minus_u : BinomialShape::X_minus_uY;
          if (!P.reduce_by_binomial(r, s, u, mixed).is_zero())
            throw std::logic_error("torsion witness failed exact division");
          v.witnesses.push_back({r, s, u, un, ud, shape});
        }
      }
    }
  }
  v.found = !v.witnesses.empty();
  return v;
}

ExclusionBudget exclusion_budget(unsigned d, unsigned k) {
  if (d < 1 || k < 2) throw BadInput("exclusion_budget needs d >= 1 and k >= 2");
  const mpq_class D2 = mpq_class(d) * d, K(k);
  ExclusionBudget b;
  b.total = D2 * (mpq_class(2) * K * K * K / 3 + 22 * K * K);
  b.two_dominant = 22 * D2 * K * K;
  b.per_pair = 44 * D2;
  b.three_dominant = 2 * D2 * K * (K - 1) * (K - 2) / 3;
  b.total.canonicalize();
  b.three_dominant.canonicalize();
  return b;
}

unsigned RationalFunction::degree() const {
  return static_cast<unsigned>(std::max(num.degree(), den.degree()));
}

namespace {

using cd = std::complex<double>;

struct NumRational {
  std::vector<cd> num, den;

  static std::vector<cd> values(const KPoly& p) {
    std::vector<cd> v;
    for (const auto& c : p.coeffs()) {
      ComplexBall b = complex_value(c, 64);
      v.emplace_back(b.center_re(), b.center_im());
    }
    return v;
  }

  static void horner(const std::vector<cd>& c, cd z, cd& val, cd& der) {
    val = 0;
    der = 0;
    for (size_t i = c.size(); i-- > 0;) {
      der = der * z + val;
      val = val * z + c[i];
    }
  }

  // g(z) and g'(z).
  void eval(cd z, cd& g, cd& dg) const {
    cd n, dn, d, dd;
    horner(num, z, n, dn);
    horner(den, z, d, dd);
    g = n / d;
    dg = (dn * d - n * dd) / (d * d);
  }
};

// Radius containing every solution: outside it one of |g1|, |g2| is far from 1 or both
// behave like their leading terms; a generous Cauchy-type bound suffices for seeding.
double seed_radius(const std::vector<const std::vector<cd>*>& polys) {
  double R = 1;
  for (const auto* p : polys) {
    if (p->size() < 2) continue;
    double lead = std::abs(p->back()), s = 0;
    for (size_t i = 0; i + 1 < p->size(); ++i) s = std::max(s, std::abs((*p)[i]) / lead);
    R = std::max(R, 1 + s);
  }
  return 2 * R + 1;
}

}  // namespace

LevelSetResult level_set_count(const RationalFunctionPair& pair, unsigned grid, unsigned precision_bits,
                               unsigned workers) {
  if (grid < 16) throw BadInput("grid must be at least 16");
  for (const auto* f : {&pair.g1, &pair.g2})
    if (f->num.is_zero() || f->den.is_zero()) throw BadInput("rational functions need nonzero numerator and denominator");
  const NumRational g1{NumRational::values(pair.g1.num), NumRational::values(pair.g1.den)};
  const NumRational g2{NumRational::values(pair.g2.num), NumRational::values(pair.g2.den)};
  const double R = seed_radius({&g1.num, &g1.den, &g2.num, &g2.den});
  const double resid_tol = std::max(std::ldexp(1.0, -static_cast<int>(std::min(precision_bits, 53u)) + 8), 1e-14);

  LevelSetResult res;
  const size_t n1 = pair.g1.degree(), n2 = pair.g2.degree();
  res.bound = (n1 + n2) * (n1 + n2);

  struct Seed {
    bool ok;
    cd z;
  };
  auto seeds = parallel_map(static_cast<size_t>(grid) * grid, workers, [&](size_t idx) {
    const double x = -R + 2 * R * (static_cast<double>(idx % grid) + 0.5) / grid;
    const double y = -R + 2 * R * (static_cast<double>(idx / grid) + 0.5) / grid;
    cd z(x, y);
    if (std::abs(z) > R) return Seed{false, z};
    // Levenberg-Marquardt on F = (|g1|^2 - 1, |g2|^2 - 1) over (x, y).
    double lambda = 1e-3;
    auto residual = [&](cd w, double F[2], double J[2][2]) {
      cd a, da, b, db;
      g1.eval(w, a, da);
      g2.eval(w, b, db);
      F[0] = std::norm(a) - 1;
      F[1] = std::norm(b) - 1;
      const cd ta = std::conj(a) * da, tb = std::conj(b) * db;
      J[0][0] = 2 * ta.real();
      J[0][1] = -2 * ta.imag();
      J[1][0] = 2 * tb.real();
      J[1][1] = -2 * tb.imag();
    };
    double F[2], J[2][2];
    residual(z, F, J);
    double cost = F[0] * F[0] + F[1] * F[1];
    for (int it = 0; it < 200 && cost > resid_tol * resid_tol; ++it) {
      if (!std::isfinite(cost)) return Seed{false, z};
      // (J^T J + lambda I) step = -J^T F
      const double a = J[0][0] * J[0][0] + J[1][0] * J[1][0] + lambda;
      const double b = J[0][0] * J[0][1] + J[1][0] * J[1][1];
      const double d = J[0][1] * J[0][1] + J[1][1] * J[1][1] + lambda;
      const double gx = J[0][0] * F[0] + J[1][0] * F[1];
      const double gy = J[0][1] * F[0] + J[1][1] * F[1];
      const double det = a * d - b * b;
      if (det == 0) return Seed{false, z};
      const cd step(-(d * gx - b * gy) / det, -(a * gy - b * gx) / det);
      double F2[2], J2[2][2];
      residual(z + step, F2, J2);
      const double cost2 = F2[0] * F2[0] + F2[1] * F2[1];
      if (cost2 < cost) {
        z += step;
        std::copy(F2, F2 + 2, F);
        for (int r = 0; r < 2; ++r) std::copy(J2[r], J2[r] + 2, J[r]);
        cost = cost2;
        lambda = std::max(lambda / 3, 1e-15);
      } else {
        lambda *= 4;
        if (lambda > 1e12) break;
      }
    }
    return Seed{cost <= resid_tol * resid_tol, z};
  });

  const double cluster_tol = 1e-4;
  for (size_t i = 0; i < seeds.size(); ++i) {
    if (std::abs(cd(-R + 2 * R * (static_cast<double>(i % grid) + 0.5) / grid,
                    -R + 2 * R * (static_cast<double>(i / grid) + 0.5) / grid)) > R)
      continue;
    if (!seeds[i].ok) {
      ++res.dropped_seeds;
      continue;
    }
    const cd z = seeds[i].z;
    const bool known = std::any_of(res.points.begin(), res.points.end(),
                                   [&](cd p) { return std::abs(p - z) < cluster_tol * std::max(1.0, std::abs(z)); });
    if (!known) res.points.push_back(z);
  }
  std::sort(res.points.begin(), res.points.end(), [](cd a, cd b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  res.count = res.points.size();
  res.within_bound = res.count <= res.bound;
  res.exceptional_like = !res.within_bound;
  return res;
}

}  // namespace cyclorec
