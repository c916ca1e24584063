#include <doctest.h>

#include "cli.hpp"
#include "holomnum/path_engine.hpp"

using namespace holomnum;

namespace {

BallMatrix transition(const char* op, const char* path, const char* eps = "1e-30") {
    EngineOptions o;
    o.eps = cli::parse_eps(eps);
    return numerical_transition_matrix(cli::parse_operator(op), cli::parse_path(path), o).matrix;
}

const char* const kOperators[] = {
    "Dx^2 - x",                                 // Airy, entire
    "x*Dx^2 + Dx",                              // log, singular at 0
    "(x^2 + 1)*Dx^2 + x*Dx + 1",                // singular at +-i
    "x*(x - 1)*Dx^2 + (3*x - 1)*Dx + 1/4",      // hypergeometric, singular at 0, 1
};

}  // namespace

TEST_SUITE("property") {
    TEST_CASE("transition matrices compose along a path") {
        for (const char* op : kOperators) {
            CAPTURE(op);
            BallMatrix whole = transition(op, "1/2, 1/2 + i/2, -1/3 + i/2");
            BallMatrix first = transition(op, "1/2, 1/2 + i/2");
            BallMatrix second = transition(op, "1/2 + i/2, -1/3 + i/2");
            CHECK(mat_mul(second, first, 200).overlaps(whole));
        }
    }

    TEST_CASE("homotopic paths give intersecting enclosures") {
        for (const char* op : kOperators) {
            CAPTURE(op);
            BallMatrix direct = transition(op, "1/2, -1/3 + i/2");
            BallMatrix detour = transition(op, "1/2, 1/4 + i/3, 0 + i/2, -1/3 + i/2");
            CHECK(direct.overlaps(detour));
        }
    }

    TEST_CASE("loops around no singular point give the identity") {
        for (const char* op : kOperators) {
            CAPTURE(op);
            BallMatrix loop = transition(op, "1/2, 1/2 + i/3, 1/5 + i/3, 1/2");
            CHECK(loop.overlaps(BallMatrix::identity(loop.rows())));
            CHECK(mpfr_get_exp(loop.max_rad().get()) < -90);
        }
    }

    TEST_CASE("loops around a singular point change the branch consistently") {
        // Going around 0 once counterclockwise and once clockwise cancels out.
        BallMatrix ccw = transition("x*Dx^2 + Dx", "1, i, -1, -i, 1");
        BallMatrix cw = transition("x*Dx^2 + Dx", "1, -i, -1, i, 1");
        CHECK(mat_mul(ccw, cw, 200).overlaps(BallMatrix::identity(2)));
        CHECK_FALSE(ccw.overlaps(BallMatrix::identity(2)));
    }
}
