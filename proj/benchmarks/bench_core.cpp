#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "fockdim/criteria.hpp"
#include "fockdim/hermitian.hpp"
#include "fockdim/membership.hpp"
#include "fockdim/riesz.hpp"
#include "fockdim/sphere.hpp"
#include "fockdim/wirtinger.hpp"

using namespace fockdim;
using cd = std::complex<double>;

namespace {

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse("abs2(z1)+2*log(1+abs2(z2))-3*log(normsq(2))"));
}
BENCHMARK(BM_Parse);

void BM_Eval(benchmark::State& state) {
  const WeightExpr e = parse("log(1+normsq(3))^1.5+abs2(z1^3+z2^3+z3^3)");
  const cd z[3] = {cd(0.3, 0.1), cd(-1.0, 0.5), cd(0.2, -0.7)};
  for (auto _ : state) benchmark::DoNotOptimize(eval(e, z));
}
BENCHMARK(BM_Eval);

// Second-order Wirtinger jet, the inner loop of every criterion.
void BM_Levi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WeightExpr e = parse("log(1+normsq(" + std::to_string(n) + "))^1.5") - log_norm_weight(10.0, n);
  std::vector<cd> z(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) z[static_cast<std::size_t>(j)] = cd(0.5 + j, -0.25 * j);
  for (auto _ : state) benchmark::DoNotOptimize(levi(e, z));
}
BENCHMARK(BM_Levi)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_LeviScaled(benchmark::State& state) {
  const WeightExpr e = parse("log(1+normsq(2))^1.5") - log_norm_weight(10.0, 2);
  const std::complex<long double> z[2] = {{std::exp2l(3000.0L), 0.0L}, {0.0L, std::exp2l(2999.0L)}};
  for (auto _ : state) benchmark::DoNotOptimize(levi_scaled(e, z));
}
BENCHMARK(BM_LeviScaled);

void BM_Eigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<cd> entries(static_cast<std::size_t>(n * n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      entries[static_cast<std::size_t>(j * n + k)] =
          j == k ? cd(1.0 + j, 0.0) : cd(0.1 * (j + k), 0.05 * (j - k));
  const HermitianMatrix h(n, entries);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(h));
}
BENCHMARK(BM_Eigenvalues)->Arg(2)->Arg(3)->Arg(4)->Arg(8)->Arg(16);

void BM_RieszMass(benchmark::State& state) {
  const WeightExpr e = parse("2.5*log(1+abs2(z1))");
  const QuadConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(riesz_mass(e, cfg));
}
BENCHMARK(BM_RieszMass)->Unit(benchmark::kMillisecond);

void BM_MonomialC2(benchmark::State& state) {
  const WeightExpr psi = parse("abs2(z1^3+z2^3)");
  const int alpha[2] = {1, 0};
  QuadConfig cfg;
  cfg.n_sphere = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(monomial_in_space(psi, alpha, cfg));
}
BENCHMARK(BM_MonomialC2)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_SampleSphere(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_sphere(3, count, 7));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_SampleSphere)->Arg(1 << 12)->Arg(1 << 16);

void BM_TEps(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(t_eps_measure(PowerSum{3, 2}, 0.1, 100000, 7));
}
BENCHMARK(BM_TEps)->Unit(benchmark::kMillisecond);

void BM_PshScan(benchmark::State& state) {
  const WeightExpr psi = parse("log(1+normsq(2))^1.5");
  for (auto _ : state) benchmark::DoNotOptimize(psh_outside_compact_scan(psi, 10.0));
}
BENCHMARK(BM_PshScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
