// Parallel vs serial tensor sums behind the multi-dimensional Selberg
// quadrature. ELLAX_THREADS is not read here; use OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ellax/quadrature.hpp"
#include "ellax/selberg.hpp"

using namespace ellax;

namespace {

std::vector<cplx> table(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> out(static_cast<std::size_t>(n));
    for (cplx& c : out)
        c = {g(rng), g(rng)};
    return out;
}

template <TensorSums (*Sum)(int, std::span<const cplx>, std::span<const cplx>)>
void BM_tensor(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const int N = static_cast<int>(state.range(1));
    const auto w = table(N, 1), g = table(N, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(Sum(dim, w, g));
    double points = 1.0;
    for (int i = 0; i < dim; ++i)
        points *= N;
    state.counters["points/s"] = benchmark::Counter(points, benchmark::Counter::kIsIterationInvariantRate);
}

void BM_selberg_n2(benchmark::State& state) {
    const ParameterSet ps = ParameterSet::autobalance(
        0.05, 0.5, 0, 2, {0.75, std::polar(0.7, 0.4), 0.65, -0.7, std::polar(0.7, 2.0)});
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(selberg(ps, {N, 1.0, N}));
}

} // namespace

BENCHMARK(BM_tensor<symmetric_tensor_sum>)->Args({2, 256})->Args({2, 1024})->Args({3, 64})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tensor<symmetric_tensor_sum_reference>)
    ->Args({2, 256})
    ->Args({2, 1024})
    ->Args({3, 64})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_selberg_n2)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
