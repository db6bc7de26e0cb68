// Permanent route against determinant route for Z, plus the raw kernels.

#include <benchmark/benchmark.h>

#include "dwpf/partition.hpp"
#include "dwpf/random_instance.hpp"

using namespace dwpf;

namespace {

Instance instance(int two_S, std::size_t n) {
  auto rng = trial_engine(7, two_S, n, 0);
  return random_instance(two_S, n, rng);
}

template <Scalar T>
void BM_ZPermanent(benchmark::State& state) {
  Instance in = instance(2, static_cast<std::size_t>(state.range(0)));
  auto sys = convert_system<T>(in.system);
  auto nu = convert_rapidities<T>(in.nu);
  for (auto _ : state) benchmark::DoNotOptimize(z_permanent(sys, nu).value);
  state.counters["omega"] = static_cast<double>(sys.omega());
}

template <Scalar T>
void BM_ZDeterminant(benchmark::State& state) {
  Instance in = instance(2, static_cast<std::size_t>(state.range(0)));
  auto sys = convert_system<T>(in.system);
  auto nu = convert_rapidities<T>(in.nu);
  for (auto _ : state) benchmark::DoNotOptimize(z_determinant(sys, nu).value);
  state.counters["omega"] = static_cast<double>(sys.omega());
}

SquareMatrix<Rational> cauchy(std::size_t n) {
  Instance in = instance(1, n);
  std::vector<Rational> eps(in.system.epsilons().begin(), in.system.epsilons().end());
  return cauchy_matrix<Rational>(in.nu.values, eps);
}

void BM_RyserExact(benchmark::State& state) {
  auto m = cauchy(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(permanent(m));
}

void BM_BareissExact(benchmark::State& state) {
  auto m = cauchy(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(determinant(m));
}

}  // namespace

BENCHMARK(BM_ZPermanent<Rational>)->DenseRange(2, 12, 2);
BENCHMARK(BM_ZDeterminant<Rational>)->DenseRange(2, 12, 2);
BENCHMARK(BM_ZPermanent<Complex>)->DenseRange(2, 12, 2);
BENCHMARK(BM_ZDeterminant<Complex>)->DenseRange(2, 12, 2)->Arg(20)->Arg(40);
BENCHMARK(BM_RyserExact)->DenseRange(4, 12, 4);
BENCHMARK(BM_BareissExact)->DenseRange(4, 12, 4);

BENCHMARK_MAIN();
