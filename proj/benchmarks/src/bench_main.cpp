// Micro-benchmarks for the hot paths: special functions, closed-form
// divergences, the numeric conjugate inversion, and the oracle integrators.
#include <benchmark/benchmark.h>

#include "duodiv/divergence.hpp"
#include "duodiv/families.hpp"
#include "duodiv/generator.hpp"
#include "duodiv/oracle.hpp"
#include "duodiv/truncnorm.hpp"

namespace {

using namespace duodiv;

void BM_erf(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x += 1e-9;
    benchmark::DoNotOptimize(duodiv::erf(1.3 + x));
  }
}
BENCHMARK(BM_erf);

void BM_norm_cdf_diff_far_tail(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x += 1e-12;
    benchmark::DoNotOptimize(norm_cdf_diff(8.0 + x, 9.0 + x));
  }
}
BENCHMARK(BM_norm_cdf_diff_far_tail);

void BM_trunc_log_normalizer_value(benchmark::State& state) {
  const ConvexGenerator F = trunc_log_normalizer(-1.0, 2.0);
  const Vector theta{0.3, -0.6};
  for (auto _ : state) benchmark::DoNotOptimize(F.value(theta));
}
BENCHMARK(BM_trunc_log_normalizer_value);

void BM_duo_bregman_quadratic(benchmark::State& state) {
  const DuoPair pair = DuoPair::checked(gen::quadratic(2.0), gen::quadratic(1.0));
  const Vector t1{0.7}, t2{-1.1};
  for (auto _ : state) benchmark::DoNotOptimize(duo_bregman(pair, t1, t2).value());
}
BENCHMARK(BM_duo_bregman_quadratic);

void BM_kl_trunc_normal_closed(benchmark::State& state) {
  const auto p = trunc_normal(0.0, 1.0, -1.0, 1.0);
  const auto q = trunc_normal(0.5, 1.5, -2.0, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(kl_cross_family(p, q).value());
}
BENCHMARK(BM_kl_trunc_normal_closed);

void BM_grad_conjugate_trunc_normal(benchmark::State& state) {
  const ConvexGenerator F = trunc_log_normalizer(-1.0, 2.0);
  const Vector eta = F.gradient({0.3, -0.6});
  for (auto _ : state) benchmark::DoNotOptimize(grad_conjugate(F, eta));
}
BENCHMARK(BM_grad_conjugate_trunc_normal);

void BM_kl_numeric_normal_oracle(benchmark::State& state) {
  const OracleDensity p = oracle_density(normal(0.0, 1.0));
  const OracleDensity q = oracle_density(normal(1.0, 2.0));
  for (auto _ : state) benchmark::DoNotOptimize(kl_numeric(p, q).value());
}
BENCHMARK(BM_kl_numeric_normal_oracle);

void BM_poisson_expected_log_factorial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(poisson_expected_log_factorial(2.5));
}
BENCHMARK(BM_poisson_expected_log_factorial);

}  // namespace

BENCHMARK_MAIN();
