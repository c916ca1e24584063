#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "holomnum/number_field.hpp"

namespace holomnum {

/// Closed-form constant built from rational literals, i, pi, euler_gamma,
/// sqrt, log (principal branches), + - * / and integer powers.
class ConstantExpr {
public:
    enum class Op { Rational, I, Pi, Euler, Neg, Add, Sub, Mul, Div, Pow, Sqrt, Log };
    /// Expression tree node (opaque).
    struct Node;

    /// Exact zero.
    ConstantExpr();
    static ConstantExpr rational(const mpq_class& v);
    /// Parses the textual grammar; decimals such as 0.25 or 1e-3 are exact.
    /// Throws ParseError carrying the offending position.
    static ConstantExpr parse(std::string_view text);

    /// Enclosure with relative radius at most about 2^(4 - prec); working
    /// precision is raised internally as needed. Throws DomainError for log
    /// of zero or of a negative real number.
    ComplexBall eval_ball(Prec prec) const;

    /// Exact value when the expression only involves rationals and i.
    std::optional<FieldElem> as_exact() const;

    std::string to_string() const;

    friend ConstantExpr operator+(const ConstantExpr& a, const ConstantExpr& b);
    friend ConstantExpr operator-(const ConstantExpr& a, const ConstantExpr& b);
    friend ConstantExpr operator*(const ConstantExpr& a, const ConstantExpr& b);
    friend ConstantExpr operator/(const ConstantExpr& a, const ConstantExpr& b);

private:
    explicit ConstantExpr(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
    friend class ConstantParser;
};

}  // namespace holomnum
