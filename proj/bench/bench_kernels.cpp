// Serial reference kernels versus their OpenMP versions at the sizes the
// simulator uses: (N+1) * nx for N = 5 and nx in {101, 201}.

#include <random>

#include <benchmark/benchmark.h>

#include "pdesync/kernels.hpp"
#include "pdesync/pdesim.hpp"

namespace {

pdesync::Matrix random_matrix(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  pdesync::Matrix a(n, n);
  for (double& v : a.data()) v = d(rng);
  return a;
}

template <bool Parallel>
void BM_Matvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const pdesync::Matrix a = random_matrix(n);
  pdesync::Vector x(n, 1.0), y(n);
  for (auto _ : state) {
    if constexpr (Parallel)
      pdesync::kernels::matvec(a, x, y);
    else
      pdesync::kernels::serial::matvec(a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n));
}

template <bool Parallel>
void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const pdesync::Matrix a = random_matrix(n);
  for (auto _ : state) {
    pdesync::Matrix c = Parallel ? pdesync::kernels::matmul(a, a) : pdesync::kernels::serial::matmul(a, a);
    benchmark::DoNotOptimize(c.data().data());
  }
}

void BM_SimulateSectionV(benchmark::State& state) {
  const auto net = pdesync::NetworkConfig::uniform(pdesync::example_network(), 0.0, 1.0, 3.0, -2.0);
  pdesync::SimConfig sim;
  sim.nx = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pdesync::simulate(net, sim).times.size());
}

}  // namespace

BENCHMARK(BM_Matvec<false>)->Arg(606)->Arg(1206);
BENCHMARK(BM_Matvec<true>)->Arg(606)->Arg(1206);
BENCHMARK(BM_Matmul<false>)->Arg(505);
BENCHMARK(BM_Matmul<true>)->Arg(505);
BENCHMARK(BM_SimulateSectionV)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
