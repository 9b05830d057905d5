#include <benchmark/benchmark.h>

#include "spectral/kernels.hpp"
#include "spectral/lattice.hpp"

using namespace spectral;

namespace
{
WindowSet lattice_window(std::size_t d, std::int64_t r)
{
    PeriodicSet z(Lattice::integer(d), {RVec(d)});
    return window(z, make_box(RVec(d, Rational(-r)), RVec(d, Rational(r))));
}

void BM_serial_1d(benchmark::State& state)
{
    auto w = lattice_window(1, state.range(0));
    auto g = GridSpec::unit_cell(1, 512);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            kernels::power_sum_serial(Domain::cube(1), w.points, g));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size())
                            * static_cast<long>(w.size()));
}

void BM_parallel_1d(benchmark::State& state)
{
    auto w = lattice_window(1, state.range(0));
    auto g = GridSpec::unit_cell(1, 512);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            kernels::power_sum_parallel(Domain::cube(1), w.points, g));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size())
                            * static_cast<long>(w.size()));
}

void BM_serial_2d(benchmark::State& state)
{
    auto w = lattice_window(2, state.range(0));
    auto g = GridSpec::unit_cell(2, 32);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            kernels::power_sum_serial(Domain::cube(2), w.points, g));
}

void BM_parallel_2d(benchmark::State& state)
{
    auto w = lattice_window(2, state.range(0));
    auto g = GridSpec::unit_cell(2, 32);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            kernels::power_sum_parallel(Domain::cube(2), w.points, g));
}
}  // namespace

BENCHMARK(BM_serial_1d)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel_1d)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_serial_2d)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel_2d)->Arg(30)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
