#include <doctest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "holomnum/error.hpp"
#include "oracles.hpp"

using namespace holomnum;
using namespace holomnum::cli;

namespace {

struct Output {
    int code;
    std::string out;
    std::string err;
};

Output run_request(const Request& req) {
    std::ostringstream out, err;
    int code = run(req, out, err);
    return {code, out.str(), err.str()};
}

RealBall ball(const char* mid, const char* rad, Prec prec = 128) {
    Float r(kMagPrec);
    mpfr_set_str(r.get(), rad, 10, MPFR_RNDU);
    return RealBall::from_mid_rad(RealBall::from_decimal(mid, prec).mid(), r);
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("operator parsing errors carry positions") {
        try {
            parse_operator("x*Dx + ");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.position() == 7);
        }
        CHECK_THROWS_AS(parse_operator("x*Dy"), ParseError);
        CHECK_THROWS_AS(parse_operator("Dx/x"), ParseError);
        CHECK_THROWS_AS(parse_operator("Dx/0"), ParseError);
        CHECK_THROWS_AS(parse_operator("x^123456"), ParseError);
        CHECK(parse_operator("Dx/2 - 0.5*Dx + x") == parse_operator("x"));
    }

    TEST_CASE("points, paths, lists") {
        CHECK(split_list("1, alg(x^2-2; 1, 2, 0, 0), 3") ==
              std::vector<std::string>{"1", "alg(x^2-2; 1, 2, 0, 0)", "3"});
        CHECK_THROWS_AS(split_list("1,,2"), ParseError);
        auto path = parse_path("0, 1-i/2, 0.25");
        REQUIRE(path.size() == 3);
        CHECK(path[1] == ExactPoint::gaussian(1, mpq_class(-1, 2)));
        CHECK(path[2] == ExactPoint::rational(mpq_class(1, 4)));
        CHECK_THROWS_AS(parse_point("sqrt(2)"), ParseError);
        CHECK(parse_point("alg(x^2 - 2; 1, 2, 0, 0)").is_real());
        CHECK(parse_eps("1e-10") == mpq_class(1, 10000000000));
        CHECK_THROWS_AS(parse_eps("-1"), ParseError);
        CHECK(parse_ini("0, 2/sqrt(pi)").size() == 2);
    }

    TEST_CASE("ball rendering") {
        CHECK(format_ball(RealBall(1)) == "[1 +/- 0]");
        CHECK(format_ball(RealBall()) == "0");
        CHECK(format_ball(ball("0", "1e-10")) == "[+/- 1.01e-10]");
        CHECK(format_ball(ball("2.5", "0.001")) == "[2.50 +/- 1.01e-3]");
        CHECK(format_ball(ball("-123456.789", "1e-3")) == "[-123456.79 +/- 2.01e-3]");
        CHECK(format_ball(ball("1e-30", "1e-40")).find("e-30") != std::string::npos);
        ComplexBall z(RealBall(0), RealBall(2));
        CHECK(format_ball(z) == "[2 +/- 0]*I");
        ComplexBall w(RealBall(1), RealBall(-3));
        CHECK(format_ball(w) == "[1 +/- 0] + [-3 +/- 0]*I");
    }

    TEST_CASE("eval subcommand") {
        Request req;
        req.command = Command::Eval;
        req.op = "Dx - 1";
        req.ini = "1";
        req.path = "0, 1";
        req.eps = "1e-20";
        Output o = run_request(req);
        CHECK(o.code == kExitOk);
        CHECK(o.out.rfind("[2.718281828459045235", 0) == 0);
        req.format = Format::Json;
        o = run_request(req);
        auto j = nlohmann::json::parse(o.out);
        CHECK(j["met_eps"] == true);
        CHECK(j["value"]["imag"]["mid"] == "0");
        CHECK(j["value"]["real"]["mid"].get<std::string>().rfind("2.71828", 0) == 0);
        CHECK(j.contains("precision"));
        CHECK(j.contains("attempts"));
    }

    TEST_CASE("transition subcommand") {
        Request req;
        req.command = Command::Transition;
        req.op = "x*Dx^2 + Dx";
        req.path = "1, 2";
        req.eps = "1e-10";
        Output o = run_request(req);
        CHECK(o.code == kExitOk);
        CHECK(o.out.rfind("[[[1 +/- 0], [0.69314718", 0) == 0);
        req.format = Format::Json;
        auto j = nlohmann::json::parse(run_request(req).out);
        CHECK(j["matrix"].size() == 2);
        CHECK(j["source_basis"] == nlohmann::json{"1", "x - 1"});
        CHECK(j["target_basis"] == nlohmann::json{"1", "x - 2"});
    }

    TEST_CASE("local-basis and singularities subcommands") {
        Request req;
        req.command = Command::LocalBasis;
        req.op = "x*Dx^2 + Dx";
        CHECK(run_request(req).out == "log(x), 1\n");
        req.point = "1";
        CHECK(run_request(req).out == "1, x - 1\n");
        req.command = Command::Singularities;
        req.op = "x*(x - 1)^2*Dx^2 + Dx";
        Output o = run_request(req);
        CHECK(o.code == kExitOk);
        CHECK(o.out.find("regular_singular") != std::string::npos);
        CHECK(o.out.find("irregular") != std::string::npos);
        req.format = Format::Json;
        auto j = nlohmann::json::parse(run_request(req).out);
        CHECK(j["singularities"].size() == 2);
    }

    TEST_CASE("errors map to exit codes") {
        Request req;
        req.command = Command::Eval;
        req.op = "Dx - ";
        req.ini = "1";
        req.path = "0, 1";
        Output o = run_request(req);
        CHECK(o.code == kExitUsage);
        CHECK(o.err.rfind("error:", 0) == 0);
        req.op = "x*Dx - 1";
        req.path = "-1, 1";
        CHECK(run_request(req).code == kExitUsage);
    }
}
