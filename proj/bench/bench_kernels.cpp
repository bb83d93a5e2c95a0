#include <benchmark/benchmark.h>

#include "cgwk/presentation.hpp"
#include "cgwk/simplicial.hpp"

using namespace cgwk;

// arg 0: serial twin, 1: OpenMP kernel
static void BM_TwoSimplices(benchmark::State& st) {
    FinSet c;
    int U = static_cast<int>(st.range(0));
    bool par = st.range(1);
    for (auto _ : st) {
        auto v = par ? enumerate_g_two_simplices(c, U) : enumerate_g_two_simplices_serial(c, U);
        benchmark::DoNotOptimize(v.data());
    }
}
BENCHMARK(BM_TwoSimplices)->Args({3, 0})->Args({3, 1})->Args({4, 0})->Args({4, 1})->Unit(benchmark::kMillisecond);

static void BM_AdmissibleSweep(benchmark::State& st) {
    FinSet c;
    int U = static_cast<int>(st.range(0));
    bool par = st.range(1);
    for (auto _ : st) {
        auto v = par ? admissible_sweep(c, U) : admissible_sweep_serial(c, U);
        benchmark::DoNotOptimize(v.data());
    }
}
BENCHMARK(BM_AdmissibleSweep)->Args({3, 0})->Args({3, 1})->Args({4, 0})->Args({4, 1})->Unit(benchmark::kMillisecond);

static void BM_K0(benchmark::State& st) {
    FinSet c;
    int U = static_cast<int>(st.range(0));
    bool par = st.range(1);
    for (auto _ : st) {
        auto p = k0_presentation(c, U, par);
        benchmark::DoNotOptimize(p.relations.data());
    }
}
BENCHMARK(BM_K0)->Args({3, 0})->Args({3, 1})->Args({4, 0})->Args({4, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
