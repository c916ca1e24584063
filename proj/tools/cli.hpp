#pragma once

// Text front end of the holomnum tool: operator / point / path parsing, ball
// rendering, and the subcommand runner shared by main.cpp and the tests.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "holomnum/ball_matrix.hpp"
#include "holomnum/constant_expr.hpp"
#include "holomnum/diff_operator.hpp"
#include "holomnum/path_engine.hpp"

namespace holomnum::cli {

/// Operator in x and Dx built from integers, decimals (read exactly), x, Dx,
/// + - * / ^ and parentheses; products are composition, so Dx*x = x*Dx + 1.
/// Division is only by nonzero constants. Throws ParseError on syntax errors
/// and DomainError when the operator is zero.
DiffOperator parse_operator(std::string_view text);

/// Polynomial in x with rational coefficients (same grammar, no Dx).
Polynomial parse_polynomial(std::string_view text);

/// Exact path point: a rational or Gaussian rational constant ("1/2",
/// "1-i/2", "0.25+3*i"), or "alg(<polynomial in x>; re_lo, re_hi, im_lo, im_hi)"
/// naming the unique root of the polynomial in that rectangle.
ExactPoint parse_point(std::string_view text);

/// Splits at commas outside parentheses; empty items are rejected.
std::vector<std::string> split_list(std::string_view text);

std::vector<ExactPoint> parse_path(std::string_view text);
std::vector<ConstantExpr> parse_ini(std::string_view text);
/// Exact positive rational from decimal or scientific notation.
mpq_class parse_eps(std::string_view text);

/// Decimal rendering of a real ball that contains it: the midpoint is printed
/// with as many digits as the radius justifies and the printing error is
/// added to the radius, which is rounded up to 3 significant digits.
struct DecimalBall {
    /// Empty when the ball is centered at zero relative to its radius.
    std::string mid;
    /// "0" for exact balls.
    std::string rad;
};
DecimalBall to_decimal(const RealBall& b);

/// Nearest `digits`-digit decimal, without any rigor claim (labels only).
std::string approx_decimal(const Float& x, int digits);

enum class Format { Text, Json };

/// "[mid +/- rad]"; "[+/- rad]" when the ball straddles zero; complex balls
/// as "A + B*I" with a zero imaginary part omitted.
std::string format_ball(const RealBall& b);
std::string format_ball(const ComplexBall& b);
/// {"real":{"mid":"...","rad":"..."},"imag":{...}}
std::string format_ball_json(const ComplexBall& b);

enum class Command { Eval, Transition, LocalBasis, Singularities };

struct Request {
    Command command = Command::Eval;
    std::string op;
    std::string ini;
    std::string path;
    std::string point = "0";
    std::string eps = "1e-16";
    SumAlgorithm algorithm = SumAlgorithm::Auto;
    Format format = Format::Text;
    int max_retries = 8;
};

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitFailure = 2 };

/// Runs the request, writing the result to `out` and diagnostics to `err`.
int run(const Request& request, std::ostream& out, std::ostream& err);

}  // namespace holomnum::cli
