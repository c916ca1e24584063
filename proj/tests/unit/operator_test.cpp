#include <doctest.h>

#include "cli.hpp"
#include "holomnum/diff_operator.hpp"
#include "holomnum/error.hpp"

using namespace holomnum;

namespace {

DiffOperator op(const char* text) { return cli::parse_operator(text); }

DiffOperator x_pow(int k) {
    DiffOperator r = DiffOperator::from_polynomial(Polynomial({1}));
    for (int i = 0; i < k; ++i) r = DiffOperator::x() * r;
    return r;
}

}  // namespace

TEST_SUITE("operators") {
    TEST_CASE("composition is the Ore product") {
        DiffOperator x = DiffOperator::x(), d = DiffOperator::dx();
        CHECK(d * x == x * d + DiffOperator::from_polynomial(Polynomial({1})));
        CHECK(op("Dx*x") == op("x*Dx + 1"));
        CHECK(op("(x*Dx)^2") == op("x^2*Dx^2 + x*Dx"));
        CHECK(op("Dx^2*x^2") == op("x^2*Dx^2 + 4*x*Dx + 2"));
    }

    TEST_CASE("order, degree, leading coefficient") {
        DiffOperator L = op("(x^2 - 34*x + 1)*x^2*Dx^3 + x - 5");
        CHECK(L.order() == 3);
        CHECK(L.degree() == 4);
        CHECK(L.leading() == Polynomial({0, 0, 1, -34, 1}));
    }

    TEST_CASE("apply on polynomials") {
        // (Dx - 1) applied to the degree-5 exp polynomial leaves -x^5/5!
        std::vector<FieldElem> e{1, 1, mpq_class(1, 2), mpq_class(1, 6), mpq_class(1, 24), mpq_class(1, 120)};
        auto r = op("Dx - 1").apply(e);
        for (int k = 0; k < 5; ++k) CHECK(r[k].is_zero());
        CHECK(r[5] == FieldElem(mpq_class(-1, 120)));
        // x Dx^2 + Dx kills constants and sends x^2 to 4x
        auto s = op("x*Dx^2 + Dx").apply({7, 0, 1});
        CHECK(s[0].is_zero());
        CHECK(s[1] == FieldElem(4));
    }

    TEST_CASE("translation moves the singular points") {
        DiffOperator L = op("x*(x - 1)*Dx^2 + Dx");
        DiffOperator M = L.translate(FieldElem(1));
        CHECK(M.is_singular_point(ExactPoint::rational(0)));
        CHECK(M.is_singular_point(ExactPoint::rational(-1)));
        CHECK_FALSE(M.is_singular_point(ExactPoint::rational(1)));
    }

    TEST_CASE("theta form expands back to x^w L") {
        for (const char* text : {"x*Dx^2 + Dx", "Dx - 1", "x^2*Dx^2 + x*Dx - x^2", "x^2*(x^2 - 34*x + 1)*Dx^4 + 5*x*(2*x^2 - 51*x + 1)*Dx^3 + (25*x^2 - 418*x + 4)*Dx^2 + (15*x - 117)*Dx + 1", "Dx^2 + 2*x*Dx"}) {
            CAPTURE(text);
            DiffOperator L = op(text);
            ThetaFormRecurrence t = L.theta_form();
            CHECK(expand_theta_form(t) == x_pow(t.weight) * L);
        }
    }

    TEST_CASE("indicial polynomials and point classification") {
        DiffOperator bessel = op("x*Dx^2 + Dx - x");
        CHECK(bessel.indicial_polynomial(ExactPoint::rational(0)) == Polynomial({0, 0, 1}));
        CHECK(bessel.classify(ExactPoint::rational(0)) == PointKind::RegularSingular);
        CHECK(bessel.classify(ExactPoint::rational(1)) == PointKind::Ordinary);
        CHECK(op("x^2*Dx + 1").classify(ExactPoint::rational(0)) == PointKind::Irregular);
        CHECK(to_string(PointKind::RegularSingular) == "regular_singular");
    }

    TEST_CASE("singularities of the leading coefficient") {
        auto s = op("(x^2 - 34*x + 1)*x^2*Dx^3 + 1").singularities(100);
        CHECK(s.size() == 3);
        for (const auto& r : s) CHECK(r.real);
        CHECK(op("Dx - 1").singularities(64).empty());
    }

    TEST_CASE("zero operator is rejected") {
        CHECK_THROWS_AS(DiffOperator().theta_form(), DomainError);
        CHECK_THROWS_AS(op("Dx - Dx"), DomainError);
    }
}
