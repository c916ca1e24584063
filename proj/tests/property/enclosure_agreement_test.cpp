#include <doctest.h>

#include <random>

#include "holomnum/error.hpp"
#include "holomnum/path_engine.hpp"
#include "oracles.hpp"
#include "plans.hpp"

using namespace holomnum;

namespace {

/// Random operator of order 1..3 and degree <= 3 with small integer
/// coefficients, ordinary at 0.
DiffOperator random_operator(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> order(1, 3);
    std::uniform_int_distribution<int> degree(0, 3);
    std::uniform_int_distribution<long> coeff(-5, 5);
    for (;;) {
        const int r = order(rng);
        std::vector<Polynomial> p;
        for (int i = 0; i <= r; ++i) {
            std::vector<mpq_class> c;
            const int d = degree(rng);
            for (int k = 0; k <= d; ++k) c.push_back(coeff(rng));
            p.push_back(Polynomial::from_rationals(c));
        }
        DiffOperator L(p);
        if (L.order() != r || L.leading().coeff(0).is_zero()) continue;
        return L;
    }
}

mpq_class dyadic_below(const Float& x, int extra_bits) {
    // largest k / 2^g <= x / 4 with g = extra_bits + max(0, -exponent(x))
    long g = extra_bits + std::max<long>(0, -static_cast<long>(mpfr_get_exp(x.get())));
    Float t(64);
    mpfr_mul_2si(t.get(), x.get(), g - 2, MPFR_RNDD);
    mpz_class k;
    mpfr_get_z(k.get_mpz_t(), t.get(), MPFR_RNDD);
    mpq_class q(k, mpz_class(1) << g);
    q.canonicalize();
    return q;
}

}  // namespace

TEST_SUITE("property") {
    TEST_CASE("naive and binary-splitting enclosures intersect on random operators") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 50; ++trial) {
            DiffOperator L = random_operator(rng);
            CAPTURE(L.to_string());
            Float rho = singularity_distance(L, ExactPoint::rational(0));
            mpq_class z = L.leading().degree() == 0 ? mpq_class(1, 2) : dyadic_below(rho, 6);
            if (z == 0) z = mpq_class(1, 1024);
            ExactPoint x1 = ExactPoint::rational(trial % 2 ? z : mpq_class(-z));
            BallMatrix a = step_transition(L, ExactPoint::rational(0), x1, 200, 240, SumAlgorithm::Naive);
            BallMatrix b = step_transition(L, ExactPoint::rational(0), x1, 200, 240, SumAlgorithm::BinarySplitting);
            CHECK(a.is_finite());
            CHECK(b.is_finite());
            CHECK(a.overlaps(b));
            CHECK(mpfr_get_exp(a.max_rad().get()) < -100);
            CHECK(mpfr_get_exp(b.max_rad().get()) < -100);
        }
    }
}
