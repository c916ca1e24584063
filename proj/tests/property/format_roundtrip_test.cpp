#include <doctest.h>

#include <random>

#include "cli.hpp"
#include "oracles.hpp"

using namespace holomnum;

TEST_SUITE("property") {
    TEST_CASE("printed balls contain the balls they print") {
        std::mt19937_64 rng(99);
        std::uniform_int_distribution<long> mant(-(1L << 52), 1L << 52);
        std::uniform_int_distribution<int> mexp(-200, 200);
        std::uniform_int_distribution<int> rgap(-300, 10);
        std::uniform_int_distribution<Prec> prec(10, 400);
        for (int trial = 0; trial < 3000; ++trial) {
            Float mid(prec(rng));
            mpfr_set_si_2exp(mid.get(), mant(rng), mexp(rng), MPFR_RNDN);
            Float rad(kMagPrec);
            if (trial % 7 != 0) mpfr_set_si_2exp(rad.get(), mant(rng) & 0xffff, mexp(rng) + rgap(rng), MPFR_RNDU);
            mpfr_abs(rad.get(), rad.get(), MPFR_RNDU);
            RealBall b = RealBall::from_mid_rad(mid, rad);
            cli::DecimalBall d = cli::to_decimal(b);
            CAPTURE(b.to_string());
            CAPTURE(d.mid);
            CAPTURE(d.rad);
            mpq_class m = d.mid.empty() ? mpq_class(0) : oracle::decimal(d.mid);
            mpq_class r = oracle::decimal(d.rad);
            // [m - r, m + r] contains [mid - rad, mid + rad]
            CHECK(abs(m - oracle::to_mpq(b.mid())) + oracle::to_mpq(b.rad()) <= r);
            // The text form parses back to the same numbers.
            std::string text = cli::format_ball(b);
            CHECK(text.front() == '[');
            CHECK(text.find(d.rad) != std::string::npos);
            // The radius carries at most 3 significant digits.
            if (d.rad != "0") CHECK(d.rad.find('e') <= 5);
        }
    }
}
