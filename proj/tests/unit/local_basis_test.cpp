#include <doctest.h>

#include "cli.hpp"
#include "holomnum/error.hpp"
#include "holomnum/local_basis.hpp"
#include "oracles.hpp"

using namespace holomnum;

namespace {

std::vector<std::string> names(const char* op, const char* point, const char* var) {
    DiffOperator L = cli::parse_operator(op);
    LocalBasisStructure s = local_basis_monomials(L, cli::parse_point(point));
    std::vector<std::string> out;
    for (const auto& m : s.monomials) out.push_back(format_monomial(m, var));
    return out;
}

}  // namespace

TEST_SUITE("local_basis") {
    TEST_CASE("canonical monomials") {
        CHECK(names("x*Dx^2 + Dx", "0", "x") == std::vector<std::string>{"log(x)", "1"});
        CHECK(names("Dx^2 + 1", "0", "x") == std::vector<std::string>{"1", "x"});
        CHECK(names("4*x^2*Dx^2 + 4*x*Dx - 1", "0", "x") == std::vector<std::string>{"x^(-1/2)", "sqrt(x)"});
        auto lattice = names("(-1+x)*x^3*(2+x)*(3+x)*(6+x)*(8+x)*(4+3*x)^2*Dx^4 + 2*x^2*(4+3*x)*(-3456-2304*x+3676*x^2+4920*x^3+2079*x^4+356*x^5+21*x^6)*Dx^3 + 6*x*(-5376-5248*x+11080*x^2+25286*x^3+19898*x^4+7432*x^5+1286*x^6+81*x^7)*Dx^2 + 12*(-384+224*x+3716*x^2+7633*x^3+6734*x^4+2939*x^5 + 604*x^6+45*x^7)*Dx + 12*x*(256+632*x+702*x^2+382*x^3+98*x^4+9*x^5)", "0", "x");
        CHECK(lattice == std::vector<std::string>{"1/6*log(x)^3", "1/2*log(x)^2", "log(x)", "1"});
        const char* apery = "x^2*(x^2 - 34*x + 1)*Dx^4 + 5*x*(2*x^2 - 51*x + 1)*Dx^3 + (25*x^2 - 418*x + 4)*Dx^2 + (15*x - 117)*Dx + 1";
        CHECK(names(apery, "0", "x") == std::vector<std::string>{"1/2*log(x)^2", "log(x)", "1", "x"});
        CHECK(names(apery, "alg(x^2 - 34*x + 1; 0, 1/10, 0, 0)", "x - a") ==
              std::vector<std::string>{"1", "sqrt(x - a)", "x - a", "(x - a)^2"});
    }

    TEST_CASE("monomial rendering") {
        CHECK(format_monomial(Monomial{0, 0}, "x") == "1");
        CHECK(format_monomial(Monomial{1, 1}, "x - 1") == "(x - 1)*log(x - 1)");
        CHECK(format_monomial(Monomial{mpq_class(1, 2), 0}, "x") == "sqrt(x)");
        CHECK(format_monomial(Monomial{2, 0}, "x") == "x^2");
        CHECK(format_monomial(Monomial{0, 2}, "x") == "1/2*log(x)^2");
    }

    TEST_CASE("exponent clusters") {
        auto c = group_exponents({{mpq_class(1, 2), 1}, {0, 2}, {mpq_class(-1, 2), 1}, {3, 1}});
        REQUIRE(c.size() == 2);
        CHECK(c[0].base == mpq_class(-1, 2));
        CHECK(c[0].total_multiplicity() == 2);
        CHECK(c[0].max_offset() == 1);
        CHECK(c[1].base == 0);
        CHECK(c[1].multiplicity_at(0) == 2);
        CHECK(c[1].multiplicity_at(3) == 1);
        CHECK(c[1].multiplicity_at(1) == 0);
    }

    TEST_CASE("non-rational exponents are unsupported") {
        // indicial polynomial theta^2 - 2
        DiffOperator L = cli::parse_operator("x^2*Dx^2 + x*Dx - 2");
        CHECK_THROWS_AS(local_basis_monomials(L, ExactPoint::rational(0)), UnsupportedError);
    }

    TEST_CASE("expansions of exp and log") {
        LogSeries e = expand_local_solution(cli::parse_operator("Dx - 1"), ExactPoint::rational(0), Monomial{0, 0}, 8);
        auto c = oracle::exp_coefficients(8);
        for (int n = 0; n < 8; ++n) CHECK(e.u[n][0] == FieldElem(c[n]));
        // log(x) expanded at 1: x - x^2/2 + x^3/3 - ... in powers of (x - 1).
        LogSeries l = expand_local_solution(cli::parse_operator("x*Dx^2 + Dx"), ExactPoint::rational(1), Monomial{1, 0}, 6);
        for (int n = 1; n < 6; ++n) CHECK(l.u[n][0] == FieldElem(mpq_class(n % 2 ? 1 : -1, n)));
    }

    TEST_CASE("evaluating a truncated series with its jet") {
        LogSeries e = expand_local_solution(cli::parse_operator("Dx - 1"), ExactPoint::rational(0), Monomial{0, 0}, 60);
        auto jet = evaluate_log_series(e, ComplexBall(1), 0.0, 3, 200);
        // the truncation error is about 1/60!, far below 1e-40
        RealBall tol_e = jet[0].re();
        CHECK(oracle::contains_within(tol_e, oracle::decimal(oracle::kE), mpq_class(1, mpz_class("10000000000000000000000000000000000000000"))));
        CHECK(oracle::contains_within(jet[2].re(), oracle::decimal(oracle::kE) / 2, mpq_class(1, mpz_class("10000000000000000000000000000000000000000"))));
    }
}
