// Serial reference vs OpenMP kernels, and serial vs parallel sweeps.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "qze/kernels.hpp"
#include "qze/zeno_analysis.hpp"

namespace {

using qze::kernels::cplx;

struct Data {
  std::vector<cplx> a, b;
  std::vector<double> q;
  explicit Data(std::size_t n) : a(n), b(n), q(n) {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> g;
    for (std::size_t j = 0; j < n; ++j) {
      a[j] = {g(rng), g(rng)};
      b[j] = {g(rng), g(rng)};
      q[j] = g(rng);
    }
  }
};

template <auto Fn>
void bm_phase_table(benchmark::State& state) {
  Data d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Fn(d.q, 0.3, d.a);
    benchmark::DoNotOptimize(d.a.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void bm_multiply(benchmark::State& state) {
  Data d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Fn(d.a, d.b);
    benchmark::DoNotOptimize(d.a.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void bm_dot(benchmark::State& state) {
  Data d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(d.a, d.b));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void bm_norm(benchmark::State& state) {
  Data d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(d.a));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

#define QZE_PAIR(bm, fn)                                                              \
  BENCHMARK(bm<qze::kernels::serial::fn>)->Name(#fn "/serial")->RangeMultiplier(8)->Range(512, 262144); \
  BENCHMARK(bm<qze::kernels::omp::fn>)->Name(#fn "/omp")->RangeMultiplier(8)->Range(512, 262144)

QZE_PAIR(bm_phase_table, phase_table);
QZE_PAIR(bm_multiply, multiply);
QZE_PAIR(bm_dot, dot);
QZE_PAIR(bm_norm, norm_sq);

void bm_sweep(benchmark::State& state) {
  qze::SweepSpec spec;
  spec.K_values = {2.0, 5.0};
  spec.T_values = {0.005, 0.01};
  spec.M_values = {10, 50};
  spec.cycles_per_point = 1;
  const auto exec = state.range(0) ? qze::Execution::parallel : qze::Execution::serial;
  for (auto _ : state) benchmark::DoNotOptimize(qze::run_sweep(spec, qze::default_grid(), exec));
}
BENCHMARK(bm_sweep)->Name("sweep/serial")->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_sweep)->Name("sweep/parallel")->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
