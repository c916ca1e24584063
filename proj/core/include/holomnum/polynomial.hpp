#pragma once

#include <string>
#include <vector>

#include "holomnum/number_field.hpp"

namespace holomnum {

/// Dense univariate polynomial with exact number-field coefficients,
/// constant term first. The zero polynomial has no coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<FieldElem> coeffs);
    Polynomial(std::initializer_list<long> coeffs);

    static Polynomial constant(const FieldElem& c);
    /// c * x^k
    static Polynomial monomial(const FieldElem& c, int k);
    static Polynomial from_rationals(const std::vector<mpq_class>& coeffs);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    /// Zero beyond the degree.
    FieldElem coeff(int k) const;
    const FieldElem& leading() const { return c_.back(); }
    const std::vector<FieldElem>& coeffs() const { return c_; }
    /// Index of the lowest nonzero coefficient (-1 for zero).
    int valuation() const;
    /// Field of the coefficients (Q when all are rational).
    FieldPtr field() const;
    bool has_rational_coeffs() const;

    FieldElem operator()(const FieldElem& x) const;
    ComplexBall eval_ball(const ComplexBall& x, Prec prec) const;
    /// Coefficients converted to balls.
    std::vector<ComplexBall> to_balls(Prec prec) const;

    Polynomial derivative() const;
    /// p(x + a).
    Polynomial taylor_shift(const FieldElem& a) const;
    /// p(x) / lc(p).
    Polynomial monic() const;
    /// Multiplication by x^k (k may be negative when the low coefficients vanish).
    Polynomial shift(int k) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const FieldElem& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, const FieldElem& c) { return a *= c; }
    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<FieldElem> c_;
};

/// Euclidean division; throws DomainError when b is zero.
void divrem(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r);
/// Monic gcd.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// p / gcd(p, p'), monic.
Polynomial squarefree_part(const Polynomial& p);

}  // namespace holomnum
