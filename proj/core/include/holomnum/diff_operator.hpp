#pragma once

#include <string>
#include <vector>

#include "holomnum/exact_point.hpp"
#include "holomnum/polynomial.hpp"
#include "holomnum/roots.hpp"

namespace holomnum {

enum class PointKind { Ordinary, RegularSingular, Irregular };

std::string to_string(PointKind kind);

/// x^weight * L = scale * sum_k x^k q_k(theta), theta = x Dx.
///
/// Normalization: q_0 is the indicial polynomial made monic, then all q_k are
/// multiplied by the least common denominator of their rational coordinates,
/// so that every q_k has integral coordinates.
struct ThetaFormRecurrence {
    int weight = 0;
    std::vector<Polynomial> q;
    FieldElem scale{1};

    int span() const { return static_cast<int>(q.size()) - 1; }
    FieldPtr field() const;
};

/// Linear differential operator sum_i p_i(x) Dx^i with exact coefficients in
/// Q (user input) or in a number field (translates). Index i holds p_i.
///
/// The zero operator exists as a ring element (order -1) so that operator
/// arithmetic is closed; most analyses reject it.
class DiffOperator {
public:
    DiffOperator() = default;
    explicit DiffOperator(std::vector<Polynomial> coeffs);

    static DiffOperator x();
    static DiffOperator dx();
    static DiffOperator from_polynomial(const Polynomial& p);

    int order() const { return static_cast<int>(p_.size()) - 1; }
    bool is_zero() const { return p_.empty(); }
    /// Zero beyond the order.
    Polynomial coeff(int i) const;
    const std::vector<Polynomial>& coeffs() const { return p_; }
    const Polynomial& leading() const { return p_.back(); }
    /// Largest coefficient degree.
    int degree() const;
    FieldPtr field() const;

    friend DiffOperator operator+(const DiffOperator& a, const DiffOperator& b);
    friend DiffOperator operator-(const DiffOperator& a, const DiffOperator& b);
    /// Composition: (A * B) f = A(B f).
    friend DiffOperator operator*(const DiffOperator& a, const DiffOperator& b);
    friend DiffOperator operator*(const Polynomial& c, const DiffOperator& b);
    friend bool operator==(const DiffOperator& a, const DiffOperator& b);
    friend bool operator!=(const DiffOperator& a, const DiffOperator& b) { return !(a == b); }

    /// L applied to the polynomial f (coefficients constant term first). When
    /// f is a series truncated at order n, coefficients of degree >= n - r of
    /// the result are affected by the truncation.
    std::vector<FieldElem> apply(const std::vector<FieldElem>& f) const;
    std::vector<ComplexBall> apply(const std::vector<ComplexBall>& f, Prec prec) const;

    /// The operator M with M g = 0 iff L f = 0 for f(x) = g(x - a),
    /// i.e. coefficients p_i(x + a).
    DiffOperator translate(const FieldElem& a) const;

    /// Throws DomainError on the zero operator.
    ThetaFormRecurrence theta_form() const;
    /// Monic indicial polynomial at x0, in the variable theta.
    Polynomial indicial_polynomial(const ExactPoint& x0) const;
    /// Enclosures of the roots of the leading coefficient, by increasing real
    /// then imaginary part.
    std::vector<RootEnclosure> singularities(Prec prec) const;
    /// Exact test p_r(x0) = 0.
    bool is_singular_point(const ExactPoint& x0) const;
    PointKind classify(const ExactPoint& x0) const;

    std::string to_string() const;

private:
    void trim();
    std::vector<Polynomial> p_;
};

/// scale * sum_k x^k q_k(theta) expanded as sum_i p_i Dx^i; equals x^w L.
DiffOperator expand_theta_form(const ThetaFormRecurrence& t);

}  // namespace holomnum
