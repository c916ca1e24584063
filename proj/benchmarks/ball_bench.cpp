#include <benchmark/benchmark.h>

#include "holomnum/ball.hpp"
#include "holomnum/ball_matrix.hpp"

using namespace holomnum;

namespace {

void BM_ComplexMul(benchmark::State& state) {
    const Prec prec = state.range(0);
    ComplexBall a(RealBall::from_mpq(mpq_class(1, 3), prec), RealBall::from_mpq(mpq_class(2, 7), prec));
    ComplexBall b(RealBall::from_mpq(mpq_class(-5, 11), prec), RealBall::from_mpq(mpq_class(1, 13), prec));
    for (auto _ : state) benchmark::DoNotOptimize(mul(a, b, prec));
}
BENCHMARK(BM_ComplexMul)->RangeMultiplier(4)->Range(64, 16384);

void BM_ComplexLog(benchmark::State& state) {
    const Prec prec = state.range(0);
    ComplexBall z(RealBall::from_mpq(mpq_class(-3, 4), prec), RealBall::from_mpq(mpq_class(1, 5), prec));
    for (auto _ : state) benchmark::DoNotOptimize(log(z, 3.0, prec));
}
BENCHMARK(BM_ComplexLog)->RangeMultiplier(4)->Range(64, 4096);

void BM_MatrixProduct(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Prec prec = 256;
    BallMatrix a(n, n), b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = ComplexBall(RealBall::from_mpq(mpq_class(long(i + 1), long(j + 2)), prec));
            b(i, j) = ComplexBall(RealBall(), RealBall::from_mpq(mpq_class(long(j + 1), long(i + 3)), prec));
        }
    for (auto _ : state) benchmark::DoNotOptimize(mat_mul(a, b, prec));
}
BENCHMARK(BM_MatrixProduct)->Arg(2)->Arg(4)->Arg(8);

}  // namespace
