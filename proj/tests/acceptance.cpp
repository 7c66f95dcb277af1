// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "cyclorec/bounds.hpp"
#include "cyclorec/config.hpp"
#include "cyclorec/embedding.hpp"
#include "cyclorec/errors.hpp"
#include "cyclorec/ideal.hpp"
#include "cyclorec/intfactor.hpp"
#include "cyclorec/run.hpp"
#include "cyclorec/scan.hpp"
#include "cyclorec/sunit.hpp"

using namespace cyclorec;
namespace fs = std::filesystem;
using Dec50 = boost::multiprecision::cpp_dec_float_50;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

ParamLRS sequence(const std::string& f, const std::string& alpha) {
  return parse_config_text(R"({"field": {"conductor": 1}, "sequence": {"f": )" + f + R"(, "alpha": )" + alpha + "}}")
      .sequence();
}

const ParamLRS& L1() {
  static const ParamLRS L = sequence("[[1], [1]]", "[[3, 1], [1, 1]]");
  return L;
}

const ParamLRS& tie_family() {
  static const ParamLRS L = sequence("[[1], [1]]", "[[2, 1], [1, 2]]");
  return L;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  const auto k3 = sequence("[[1], [1], [1]]", "[[4, 1], [2, 1], [1, 1]]");
  const std::vector<std::pair<std::string, SpecializedLRS>> fixtures{
      {"L1@1", specialize(L1(), 1, 0)}, {"L1@i", specialize(L1(), 4, 1)}, {"k3@1", specialize(k3, 1, 0)}};
  for (const auto& [name, Lz] : fixtures) {
    const auto rec = terms_recurrence(Lz, 300);
    for (unsigned long n = 0; n <= 300; ++n)
      if (!(term_closed_form(Lz, n) == rec[n])) return {false, name + " differs at n=" + std::to_string(n)};
  }
  const double s = seconds_since(t0);
  return {s < 10, "3 fixtures, n <= 300, " + std::to_string(s) + " s (limit 10 s)"};
}

Outcome gaussian_value() {
  const auto Lz = specialize(L1(), 4, 1);
  const auto u = term_closed_form(Lz, 2);
  const auto& K = u.field();
  const bool value_ok = u == CycloElem::rational(K, 8) + CycloElem::zeta_power(K, 1) * mpq_class(8);
  const auto fact = factor_principal(u);
  const auto gp = greatest_prime_and_radical(fact);
  const auto one_plus_zeta = CycloElem::one(K) + CycloElem::zeta_power(K, 1);
  const bool ideal_ok = fact.factors.size() == 1 && fact.factors[0].second == 7 &&
                        fact.factors[0].first.contains(one_plus_zeta) && fact.factors[0].first.norm() == 2;
  const bool ok = value_ok && ideal_ok && gp.largest_norm == 2 && gp.radical_norm == 2 && fact.norm_abs == 128;
  return {ok, "U_2(i) = " + u.serialize() + ", [U] = " + fact.serialize() + ", |N| = " + fact.norm_abs.get_str()};
}

Outcome recomposition() {
  const auto t0 = Clock::now();
  size_t checked = 0;
  for (const auto& [m, j] : std::vector<std::pair<unsigned, long>>{{1, 0}, {4, 1}}) {
    const auto Lz = specialize(L1(), m, j);
    for (unsigned long n = 0; n <= 60; ++n) {
      const auto u = term_closed_form(Lz, n);
      const auto fact = factor_principal(u, deadline_after(std::chrono::milliseconds(5000)));
      const std::string where = "zeta order " + std::to_string(m) + ", n=" + std::to_string(n);
      if (!fact.complete()) return {false, where + ": factorization incomplete"};
      const mpz_class absN = abs(norm(u).get_num());
      mpz_class product = 1;
      std::map<mpz_class, unsigned long> by_prime;
      for (const auto& [P, v] : fact.factors) {
        for (unsigned i = 0; i < v; ++i) product *= P.norm();
        by_prime[P.p()] += static_cast<unsigned long>(P.residue_degree()) * v;
      }
      if (product != absN) return {false, where + ": product of N(P)^v is " + product.get_str()};
      const auto ints = factor_integer(absN);
      if (!ints.complete() || ints.factors.size() != by_prime.size()) return {false, where + ": prime support differs"};
      for (const auto& [p, e] : ints.factors)
        if (by_prime[p] != e) return {false, where + ": bridge fails at p=" + p.get_str()};
      ++checked;
    }
  }
  const double s = seconds_since(t0);
  return {s < 120, std::to_string(checked) + " values, " + std::to_string(s) + " s (limit 120 s)"};
}

Outcome s_part_exponents() {
  const auto Lz = specialize(L1(), 1, 0);
  const auto& two = split_prime(Lz.field(), 2);
  const auto rep = s_part_report(Lz, {two.begin(), two.end()}, NRange{20, 60});
  double worst = 0;
  for (const auto& row : rep.rows) {
    if (!row.e_n) return {false, "e_n unknown at n=" + std::to_string(row.n)};
    worst = std::max(worst, std::abs(row.e_n->mid() - 0.5));
  }
  const auto* c3 = rep.find("C3");
  if (!c3) return {false, "C3 missing from the report"};
  const double v = c3->value.mid();
  const bool ok = worst < 0.01 && v >= 0.49 && v <= 0.51;
  return {ok, "max |e_n - 0.5| = " + std::to_string(worst) + ", C3 = " + std::to_string(v)};
}

Outcome greatest_prime_table(const fs::path& fixture) {
  const auto rep = greatest_prime_report(specialize(L1(), 1, 0), NRange{3, 40});
  std::string table = "#v1 n,absN,P,radicalN,c1,c2\n";
  double c1min = INFINITY, c2min = INFINITY, c1_3 = 0, c1_5 = 0;
  for (const auto& row : rep.rows) {
    if (!row.c1 || !row.c2) return {false, "row " + std::to_string(row.n) + " lacks c1/c2"};
    table += std::to_string(row.n) + "," + row.abs_norm.get_str() + "," + row.largest_norm.get_str() + "," +
             row.radical_norm.get_str() + "," + row.c1->mid_string(12) + "," + row.c2->mid_string(12) + "\n";
    c1min = std::min(c1min, row.c1->mid());
    c2min = std::min(c2min, row.c2->mid());
    if (row.n == 3) c1_3 = row.c1->mid();
    if (row.n == 5) c1_5 = row.c1->mid();
  }
  const bool frozen = table == slurp(fixture);
  const bool ok = frozen && c1min > 0 && c2min > 0 && std::abs(c1_3 - 0.402) < 1e-3 && std::abs(c1_5 - 0.772) < 1e-3;
  return {ok, std::string(frozen ? "fixture reproduced" : "fixture MISMATCH") + ", min c1 = " + std::to_string(c1min) +
                  ", min c2 = " + std::to_string(c2min) + ", c1(3) = " + std::to_string(c1_3) +
                  ", c1(5) = " + std::to_string(c1_5)};
}

Outcome torsion_detection() {
  const auto& a = tie_family().alpha();
  const auto tie = torsion_factor_check(a[0], a[1], 4);
  bool has_111 = false;
  for (const auto& w : tie.witnesses) {
    const bool mixed = w.shape == BinomialShape::XY_minus_u;
    if (!modulus_difference(a[0], a[1]).reduce_by_binomial(w.r, w.s, w.u, mixed).is_zero())
      return {false, "witness fails exact division"};
    if (w.r == 1 && w.s == 1 && w.u == CycloElem::one(w.u.field()) && mixed) has_111 = true;
  }
  const auto plain = sequence("[[1], [1]]", "[[3, 1], [1, 1]]");
  const auto none = torsion_factor_check(plain.alpha()[0], plain.alpha()[1], 4);
  return {has_111 && !none.found, std::to_string(tie.witnesses.size()) + " witness(es) for (X+2, 2X+1), " +
                                      std::to_string(none.witnesses.size()) + " for (X+3, X+1)"};
}

Outcome kronecker() {
  const auto z3 = CycloElem::zeta_power(make_field(3), 1);
  const auto z5 = CycloElem::zeta_power(make_field(5), 1);
  const auto z7 = CycloElem::zeta_power(make_field(7), 3);
  const bool a = is_root_of_unity(CycloElem::one(z3.field()) + z3);
  const bool b = is_root_of_unity(CycloElem::one(z5.field()) + z5);
  const bool c = is_root_of_unity(-z7);
  return {a && !b && c, std::string("1+z3: ") + (a ? "yes" : "no") + ", 1+z5: " + (b ? "yes" : "no") +
                            ", -z7^3: " + (c ? "yes" : "no")};
}

Dec50 matveev_reference(unsigned m, unsigned D, Dec50 B, const std::vector<Dec50>& logA) {
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  const Dec50 e = boost::math::constants::e<Dec50>();
  Dec50 v = -4 * pow(Dec50(30), m + 4) * pow(Dec50(m + 1), Dec50(5.5)) * pow(Dec50(D), m + 2) * log(e * D) *
            log(e * m * B);
  for (const auto& a : logA) v *= a;
  return v;
}

Outcome matveev_formula() {
  constexpr Precision prec = 256;
  auto ball = [](double x) { return RealBall::exact(x, prec); };
  MatveevInput in{3, 2, {ball(1), ball(1), ball(1)}, ball(100)};
  const RealBall got = matveev_explicit(in, prec);
  const Dec50 want = matveev_reference(3, 2, 100, {1, 1, 1});
  const Dec50 rel = abs((Dec50(got.mid_string(45)) - want) / want);
  bool monotone = true;
  const std::vector<double> grid{1, 2, 5};
  for (unsigned m : {2u, 3u, 4u})
    for (unsigned D : {1u, 2u, 4u})
      for (double B : grid)
        for (double a : grid) {
          MatveevInput base{m, D, std::vector<RealBall>(m, ball(a)), ball(B)};
          const double v = matveev_explicit(base, prec).mid();
          auto lower = [&](MatveevInput x) { return matveev_explicit(x, prec).mid() < v; };
          MatveevInput up_m{m + 1, D, std::vector<RealBall>(m + 1, ball(a)), ball(B)};
          MatveevInput up_D{m, D + 1, base.logA, ball(B)};
          MatveevInput up_B{m, D, base.logA, ball(B * 2)};
          MatveevInput up_a{m, D, std::vector<RealBall>(m, ball(a * 2)), ball(B)};
          monotone = monotone && lower(up_m) && lower(up_D) && lower(up_B) && lower(up_a);
        }
  std::ostringstream d;
  d << "value " << got.mid_string(16) << ", relative error " << rel.str(3, std::ios::scientific)
    << ", monotone on 3^4 grid: " << (monotone ? "yes" : "no");
  return {rel < Dec50("1e-30") && monotone, d.str()};
}

Outcome n_bound_scan() {
  // x on a log grid in [2, 1e6], a on a log grid in [e, 1e7]; the bound is the library's.
  size_t premises = 0, violations = 0;
  constexpr int kx = 241, ka = 40001;
  for (int i = 0; i < kx; ++i) {
    const double x = 2 * std::pow(5e5, static_cast<double>(i) / (kx - 1));
    const double bound = resolve_n_bound(RealBall::exact(x, 128)).mid();
    for (int k = 0; k < ka; ++k) {
      const double a = std::exp(1.0 + (std::log(1e7) - 1.0) * k / (ka - 1));
      if (a / std::log(a) >= x) continue;
      ++premises;
      if (!(a < bound)) ++violations;
    }
  }
  return {premises > 0 && violations == 0,
          std::to_string(premises) + " grid points satisfy the premise, " + std::to_string(violations) + " violations"};
}

Outcome solver_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(7);
  const std::vector<unsigned long> pool{2, 3, 5, 7};
  const std::vector<mpq_class> epss{mpq_class(1, 2), mpq_class(1)};
  size_t nonempty = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<unsigned long> S;
    while (S.empty())
      for (unsigned long p : pool)
        if (rng() % 2) S.push_back(p);
    const unsigned r = 1 + static_cast<unsigned>(rng() % 3);
    const mpq_class eps = epss[rng() % 2];
    mpz_class value;
    if (trial % 2 == 0) {
      // Planted: w_r plus eps-dominated S-integers.
      const auto ints = enumerate_s_integers(S, 500000);
      const mpz_class w_r = ints[rng() % ints.size()];
      value = w_r;
      for (unsigned i = 1; i < r; ++i) {
        const mpz_class x = ints[rng() % ints.size()];
        if (eps_dominated(x, w_r, eps)) value += (rng() % 2) ? x : mpz_class(-x);
      }
      if (rng() % 2) value = -value;
    } else {
      value = static_cast<long>(rng() % 2000001) - 1000000;
    }
    if (abs(value) > 1000000 || value == 0) value = 1 + rng() % 1000000;
    const mpz_class cap = window_bound(value, r, eps);
    const auto fast = solve_value(value, S, r, eps, cap);
    const auto slow = brute_oracle(value, S, r, eps, std::max(cap, mpz_class(abs(value))));
    if (fast != slow) return {false, "trial " + std::to_string(trial) + " (value " + value.get_str() + ") differs"};
    if (!fast.empty()) ++nonempty;
  }
  const auto fixture = solve_value(72, {2, 3}, 2, mpq_class(1, 2), 1000);
  const std::vector<std::vector<mpz_class>> want{{-9, 81}, {8, 64}};
  const double s = seconds_since(t0);
  return {fixture == want && s < 60, "20 instances agree (" + std::to_string(nonempty) + " with solutions), value 72 " +
                                         (fixture == want ? "matches" : "MISMATCH") + ", " + std::to_string(s) +
                                         " s (limit 60 s)"};
}

Outcome exclusion_accounting() {
  const auto b13 = exclusion_budget(1, 3).total, b23 = exclusion_budget(2, 3).total;
  const auto scan = scan_multi_dominant(tie_family(), 24);
  bool orbit_only = scan.rows.size() == 2;
  for (const auto& row : scan.rows) orbit_only = orbit_only && row.m == 4 && (row.j == 1 || row.j == 3);
  std::string first;
  for (size_t i = 0; i < std::min<size_t>(scan.rows.size(), 4); ++i)
    first += (i ? " " : "") + std::to_string(scan.rows[i].j) + "/" + std::to_string(scan.rows[i].m);
  return {b13 == 216 && b23 == 864 && orbit_only,
          "budgets " + b13.get_str() + ", " + b23.get_str() + "; scan reports " + std::to_string(scan.rows.size()) +
              " roots (first: " + first + ")"};
}

Outcome determinism(const fs::path& scratch) {
  const std::string seq = R"("field": {"conductor": 1}, "sequence": {"f": [[1], [1]], "alpha": [[3, 1], [1, 1]]})";
  const auto main_job = parse_config_text("{" + seq + R"(, "job": {"zeta": {"m": 1, "j": 0}, "n_range": [1, 30],
    "S": [2, 3], "r": 2, "eps": "1/2", "matveev_C": "1e11", "height_cap": "18446744073709551616"}})");
  const auto gauss_job = parse_config_text("{" + seq + R"(, "job": {"zeta": {"m": 4, "j": 1}, "n_range": [1, 30],
    "S": [{"p": 2, "index": 0}, 5]}})");
  const auto scan_job = parse_config_text(
      R"({"field": {"conductor": 1}, "sequence": {"f": [[1], [1]], "alpha": [[2, 1], [1, 2]]},
          "job": {"M_max": 16, "D_max": 4}})");
  const std::vector<std::tuple<std::string, Command, const JobConfig*>> jobs{
      {"terms", Command::Terms, &main_job},   {"factor", Command::Factor, &gauss_job},
      {"spart", Command::Spart, &gauss_job},  {"growth", Command::Growth, &main_job},
      {"bounds", Command::Bounds, &main_job}, {"solve", Command::Solve, &main_job},
      {"scan", Command::Scan, &scan_job}};
  size_t compared = 0;
  for (const auto& [name, cmd, job] : jobs) {
    std::map<unsigned, fs::path> dirs;
    for (unsigned w : {1u, 8u}) {
      JobConfig cfg = *job;
      cfg.workers = w;
      dirs[w] = scratch / (name + "_" + std::to_string(w));
      fs::remove_all(dirs[w]);
      run(cmd, cfg, dirs[w]);
    }
    for (const auto& entry : fs::directory_iterator(dirs[1])) {
      if (entry.path().extension() != ".csv") continue;
      if (slurp(entry.path()) != slurp(dirs[8] / entry.path().filename()))
        return {false, name + "/" + entry.path().filename().string() + " differs"};
      ++compared;
    }
  }
  return {compared >= jobs.size(), std::to_string(compared) + " CSV artifacts identical with 1 and 8 workers"};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path fixtures = argc > 1 ? fs::path(argv[1]) : fs::path(CYCLOREC_FIXTURE_DIR);
  const fs::path scratch = fs::temp_directory_path() / "cyclorec_acceptance";
  fs::create_directories(scratch);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"closed form equals recurrence", oracle_equivalence},
      {"Gaussian worked value", gaussian_value},
      {"norm recomposition and valuation bridge", recomposition},
      {"S-part exponent empirics", s_part_exponents},
      {"frozen greatest-prime table", [&] { return greatest_prime_table(fixtures / "greatest_prime_L1.csv"); }},
      {"torsion-factor detection", torsion_detection},
      {"Kronecker tests", kronecker},
      {"linear-form lower bound", matveev_formula},
      {"n-bound resolution scan", n_bound_scan},
      {"solver equals brute-force oracle", solver_oracle},
      {"exclusion accounting and tie scan", exclusion_accounting},
      {"worker-count determinism", [&] { return determinism(scratch); }},
  };

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    if (!out.pass) ++failed;
    std::cout << "criterion " << (i + 1) << " " << (out.pass ? "PASS" : "FAIL") << ": " << criteria[i].first << " -- "
              << out.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
