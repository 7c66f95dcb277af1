#include <benchmark/benchmark.h>

#include "cyclorec/bounds.hpp"
#include "cyclorec/config.hpp"
#include "cyclorec/ideal.hpp"
#include "cyclorec/intfactor.hpp"
#include "cyclorec/scan.hpp"
#include "cyclorec/sunit.hpp"

using namespace cyclorec;

namespace {

const ParamLRS& sample_sequence() {
  static const ParamLRS L =
      parse_config_text(R"({"field": {"conductor": 1}, "sequence": {"f": [[1], [1]], "alpha": [[3, 1], [1, 1]]}})")
          .sequence();
  return L;
}

const ParamLRS& tie_sequence() {
  static const ParamLRS L =
      parse_config_text(R"({"field": {"conductor": 1}, "sequence": {"f": [[1], [1]], "alpha": [[2, 1], [1, 2]]}})")
          .sequence();
  return L;
}

void BM_TermClosedForm(benchmark::State& state) {
  const auto Lz = specialize(sample_sequence(), 5, 1);
  const auto n = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(term_closed_form(Lz, n));
}
BENCHMARK(BM_TermClosedForm)->Arg(10)->Arg(100)->Arg(300);

void BM_TermsRecurrence(benchmark::State& state) {
  const auto Lz = specialize(sample_sequence(), 5, 1);
  const auto n = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(terms_recurrence(Lz, n));
}
BENCHMARK(BM_TermsRecurrence)->Arg(100)->Arg(300);

void BM_FactorInteger(benchmark::State& state) {
  // 4^n + 2^n: smooth-ish, with a few medium primes.
  const auto n = static_cast<unsigned long>(state.range(0));
  mpz_class x;
  mpz_ui_pow_ui(x.get_mpz_t(), 4, n);
  x += mpz_class(1) << n;
  for (auto _ : state) benchmark::DoNotOptimize(factor_integer(x));
}
BENCHMARK(BM_FactorInteger)->Arg(20)->Arg(40)->Arg(60);

void BM_FactorPrincipal(benchmark::State& state) {
  const auto Lz = specialize(sample_sequence(), 4, 1);
  const auto u = term_closed_form(Lz, static_cast<unsigned long>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(factor_principal(u));
}
BENCHMARK(BM_FactorPrincipal)->Arg(10)->Arg(30);

void BM_TieScan(benchmark::State& state) {
  const auto M = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_multi_dominant(tie_sequence(), M));
}
BENCHMARK(BM_TieScan)->Arg(12)->Arg(24);

void BM_MatveevExplicit(benchmark::State& state) {
  MatveevInput in;
  in.m = 3;
  in.D = 2;
  in.logA = {RealBall::exact(2.0, 256), RealBall::exact(3.0, 256), RealBall::exact(5.0, 256)};
  in.B = RealBall::exact(100.0, 256);
  for (auto _ : state) benchmark::DoNotOptimize(matveev_explicit(in));
}
BENCHMARK(BM_MatveevExplicit);

void BM_SolveSUnit(benchmark::State& state) {
  const auto Lz = specialize(sample_sequence(), 1, 0);
  SUnitConfig cfg;
  cfg.S = {2, 3};
  cfg.r = static_cast<unsigned>(state.range(0));
  cfg.eps = mpq_class(1, 2);
  cfg.n_min = 1;
  cfg.n_max = 10;
  cfg.height_cap = mpz_class(1) << 64;
  for (auto _ : state) benchmark::DoNotOptimize(solve(Lz, cfg));
}
BENCHMARK(BM_SolveSUnit)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
