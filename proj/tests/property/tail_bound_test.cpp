#include <doctest.h>

#include "cli.hpp"
#include "holomnum/summation.hpp"
#include "oracles.hpp"

using namespace holomnum;

namespace {

struct Corpus {
    const char* op;
    std::vector<mpq_class> (*coefficients)(int);
    std::vector<mpq_class> radii;
};

Float up(const mpq_class& q) {
    Float f(64);
    mpfr_set_q(f.get(), q.get_mpq_t(), MPFR_RNDU);
    return f;
}

}  // namespace

TEST_SUITE("property") {
    TEST_CASE("tail bounds dominate the exact tails") {
        const Corpus corpus[] = {
            {"Dx - 1", oracle::exp_coefficients, {mpq_class(1, 8), mpq_class(1, 2), 1, 3}},
            {"(1 - x)*Dx - 1", oracle::geometric_coefficients, {mpq_class(1, 8), mpq_class(1, 3), mpq_class(1, 2)}},
            {"x*Dx^2 + Dx - x", oracle::bessel_i0_coefficients, {mpq_class(1, 4), 1, 2}},
        };
        const int kTerms = 600;
        for (const auto& c : corpus) {
            DiffOperator L = cli::parse_operator(c.op);
            ThetaFormRecurrence t = L.theta_form();
            auto u = c.coefficients(kTerms);
            for (const auto& radius : c.radii)
                for (long N : {5L, 12L, 25L, 60L, 150L}) {
                    CAPTURE(c.op);
                    CAPTURE(radius.get_str());
                    CAPTURE(N);
                    std::vector<Float> last;
                    for (int i = 0; i < t.span(); ++i) last.push_back(up(N - i >= 0 ? mpq_class(abs(u[N - i])) : mpq_class(0)));
                    auto b = tail_bound(t, 0, 0, N, last, up(radius), 3);
                    if (!b) continue;  // no claim made
                    for (int j = 0; j < 3; ++j) CHECK(oracle::to_mpq((*b)[j]) >= oracle::partial_tail(u, N + 1, j, radius));
                }
        }
    }

    TEST_CASE("tail bounds exist well inside the disc of convergence") {
        DiffOperator L = cli::parse_operator("(1 - x)*Dx - 1");
        ThetaFormRecurrence t = L.theta_form();
        std::vector<Float> last{up(1)};
        CHECK(tail_bound(t, 0, 0, 50, last, up(mpq_class(1, 2)), 2).has_value());
        CHECK(tail_bound_feasible(t, 0, 0, 1000, up(mpq_class(9, 10)), 1));
        CHECK_FALSE(tail_bound_feasible(t, 0, 0, 1000, up(mpq_class(11, 10)), 1));
    }
}
