#include <doctest.h>

#include "holomnum/error.hpp"
#include "oracles.hpp"
#include "plans.hpp"

using namespace holomnum;
using holomnum::testing::single_plan;

namespace {

std::vector<Float> magnitudes(const std::vector<mpq_class>& c, long N, int span) {
    std::vector<Float> last;
    for (int i = 0; i < span; ++i) {
        Float f(64);
        mpq_class v = N - i >= 0 ? mpq_class(abs(c[static_cast<std::size_t>(N - i)])) : mpq_class(0);
        mpfr_set_q(f.get(), v.get_mpq_t(), MPFR_RNDU);
        last.push_back(f);
    }
    return last;
}

Float up(const mpq_class& q) {
    Float f(64);
    mpfr_set_q(f.get(), q.get_mpq_t(), MPFR_RNDU);
    return f;
}

}  // namespace

TEST_SUITE("summation") {
    TEST_CASE("naive summation of exp") {
        SummationResult r = sum_naive(single_plan("Dx - 1", 1, 200, SumAlgorithm::Naive));
        REQUIRE(r.jets.size() == 1);
        CHECK(r.jets[0][0].re().overlaps(oracle::mpfr_exp_ball(1, 300)));
        CHECK(r.jets[0][0].im().is_zero());
        CHECK(mpfr_get_exp(r.jets[0][0].re().rad().get()) < -190);
        CHECK(r.used == SumAlgorithm::Naive);
    }

    TEST_CASE("binary splitting of exp matches MPFR") {
        SummationResult r = sum_binary_splitting(single_plan("Dx - 1", mpq_class(1, 3), 2000, SumAlgorithm::BinarySplitting));
        CHECK(r.jets[0][0].re().overlaps(oracle::mpfr_exp_ball(mpq_class(1, 3), 2100)));
        CHECK(mpfr_get_exp(r.jets[0][0].re().rad().get()) < -1990);
        CHECK(r.used == SumAlgorithm::BinarySplitting);
    }

    TEST_CASE("jets hold the Taylor coefficients at z") {
        SummationResult r = sum_naive(single_plan("Dx - 1", mpq_class(1, 2), 128, SumAlgorithm::Naive, 4));
        RealBall e = oracle::mpfr_exp_ball(mpq_class(1, 2), 200);
        long fact = 1;
        for (int j = 0; j < 4; ++j) {
            if (j > 0) fact *= j;
            CHECK(mul_si(r.jets[0][j].re(), fact, 200).overlaps(e));
        }
    }

    TEST_CASE("naive and binary splitting agree on a log cluster") {
        DiffOperator L = cli::parse_operator("x*Dx^2 + Dx - x");
        auto naive = testing::basis_plans(L, ExactPoint::rational(0), ExactPoint::rational(mpq_class(1, 2)), 300, 340, SumAlgorithm::Naive);
        auto bs = testing::basis_plans(L, ExactPoint::rational(0), ExactPoint::rational(mpq_class(1, 2)), 300, 340, SumAlgorithm::BinarySplitting);
        SummationResult a = sum_naive(naive[0]);
        SummationResult b = sum_binary_splitting(bs[0]);
        REQUIRE(a.jets.size() == 2);
        for (std::size_t l = 0; l < 2; ++l)
            for (std::size_t j = 0; j < 2; ++j) CHECK(a.jets[l][j].overlaps(b.jets[l][j]));
    }

    TEST_CASE("auto selection") {
        CHECK(sum_series(single_plan("Dx - 1", 1, 100, SumAlgorithm::Auto)).used == SumAlgorithm::Naive);
        CHECK(sum_series(single_plan("Dx - 1", 1, 3000, SumAlgorithm::Auto)).used == SumAlgorithm::BinarySplitting);
    }

    TEST_CASE("evaluation beyond the convergence radius is refused") {
        // 1/(1 - x) at 3/2
        CHECK_THROWS_AS(sum_naive(single_plan("(1 - x)*Dx - 1", mpq_class(3, 2), 64, SumAlgorithm::Naive)),
                        StepTooLargeError);
    }

    TEST_CASE("tail bound of the exponential series") {
        DiffOperator L = cli::parse_operator("Dx - 1");
        ThetaFormRecurrence t = L.theta_form();
        auto c = oracle::exp_coefficients(400);
        const long N = 30;
        auto b = tail_bound(t, 0, 0, N, magnitudes(c, N, t.span()), up(1), 2);
        REQUIRE(b.has_value());
        for (int j = 0; j < 2; ++j) CHECK(oracle::to_mpq((*b)[j]) >= oracle::partial_tail(c, N + 1, j, 1));
    }

    TEST_CASE("tail bound of the geometric series is close to the exact tail") {
        DiffOperator L = cli::parse_operator("(1 - x)*Dx - 1");
        ThetaFormRecurrence t = L.theta_form();
        auto c = oracle::geometric_coefficients(50);
        const long N = 40;
        auto b = tail_bound(t, 0, 0, N, magnitudes(c, N, t.span()), up(mpq_class(1, 4)), 1);
        REQUIRE(b.has_value());
        mpq_class exact = mpq_class(1, 3);
        for (long k = 0; k <= N; ++k) exact /= 4;  // (1/4)^(N+1) / (3/4)
        exact *= 4;
        CHECK(oracle::to_mpq((*b)[0]) >= exact);
        CHECK(oracle::to_mpq((*b)[0]) <= exact * (mpz_class(1) << 40));
    }
}
