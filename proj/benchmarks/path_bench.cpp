#include <benchmark/benchmark.h>

#include "bench_operators.hpp"
#include "holomnum/exact_point.hpp"
#include "holomnum/path_engine.hpp"

using namespace holomnum;

namespace {

EngineOptions options(long digits) {
    EngineOptions o;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    o.eps = mpq_class(1, p10);
    return o;
}

// Regular singular start: K0 basis at 0 carried to 1.
void BM_BesselFromSingular(benchmark::State& state) {
    const DiffOperator L = bench::bessel_k0();
    const std::vector<ExactPoint> path{ExactPoint::rational(0), ExactPoint::rational(1)};
    const EngineOptions o = options(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(numerical_transition_matrix(L, path, o));
}
BENCHMARK(BM_BesselFromSingular)->Arg(10)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

// Complex path through several steps around the singular point 0.
void BM_BesselLoop(benchmark::State& state) {
    const DiffOperator L = bench::bessel_k0();
    const std::vector<ExactPoint> path{ExactPoint::rational(1), ExactPoint::gaussian(0, 1), ExactPoint::rational(-1),
                                       ExactPoint::gaussian(0, -1), ExactPoint::rational(1)};
    const EngineOptions o = options(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(numerical_transition_matrix(L, path, o));
}
BENCHMARK(BM_BesselLoop)->Arg(10)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

// Algebraic singular endpoint: Apery operator from 0 to the root of x^2 - 34 x + 1 near 0.03.
void BM_AperyToSingular(benchmark::State& state) {
    const DiffOperator L = bench::apery();
    const std::vector<ExactPoint> path{ExactPoint::rational(0),
                                       ExactPoint::algebraic({1, -34, 1}, 0, mpq_class(1, 10), 0, 0)};
    const EngineOptions o = options(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(numerical_transition_matrix(L, path, o));
}
BENCHMARK(BM_AperyToSingular)->Arg(20)->Arg(40)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
