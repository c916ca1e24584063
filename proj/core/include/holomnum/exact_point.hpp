#pragma once

#include <string>
#include <vector>

#include "holomnum/number_field.hpp"

namespace holomnum {

/// An exact complex number usable as a path vertex: a rational, a Gaussian
/// rational, or a root of an integer polynomial singled out by an isolating
/// rectangle. Values are stored as elements of the smallest of Q, Q(i),
/// Q(xi) that contains them.
class ExactPoint {
public:
    /// Zero.
    ExactPoint();
    explicit ExactPoint(FieldElem value);

    static ExactPoint rational(const mpq_class& v);
    static ExactPoint gaussian(const mpq_class& re, const mpq_class& im);
    /// The unique root of `poly` (constant term first) in the closed rectangle
    /// [re_lo, re_hi] x [im_lo, im_hi]. Rational roots collapse to rational
    /// points. Throws DomainError when the rectangle does not isolate exactly
    /// one root.
    static ExactPoint algebraic(const std::vector<mpq_class>& poly, const mpq_class& re_lo,
                                const mpq_class& re_hi, const mpq_class& im_lo, const mpq_class& im_hi);

    const FieldElem& value() const { return value_; }
    const FieldPtr& field() const { return value_.field(); }

    bool is_rational() const { return value_.is_rational(); }
    /// Proven real.
    bool is_real() const;
    bool is_zero() const { return value_.is_zero(); }

    /// Enclosure with radius about 2^-prec relative to the value.
    ComplexBall eval_ball(Prec prec) const;

    /// Same value in a field whose isolating enclosure is narrowed to width
    /// about 2^-prec; a no-op for rational and Gaussian points.
    ExactPoint refine(Prec prec) const;

    std::string to_string() const;

    friend ExactPoint operator+(const ExactPoint& a, const ExactPoint& b) { return ExactPoint(a.value_ + b.value_); }
    friend ExactPoint operator-(const ExactPoint& a, const ExactPoint& b) { return ExactPoint(a.value_ - b.value_); }
    friend bool operator==(const ExactPoint& a, const ExactPoint& b) { return a.value_ == b.value_; }
    friend bool operator!=(const ExactPoint& a, const ExactPoint& b) { return !(a == b); }

private:
    FieldElem value_;
};

}  // namespace holomnum
