#pragma once

// Mid-rad interval arithmetic on top of MPFR.
//
// A RealBall [m +/- r] holds an arbitrary-precision midpoint and a 32-bit
// radius rounded upward. Every operation returns a ball containing the exact
// image of its input balls; midpoint rounding error is folded into the radius.
// A ComplexBall is a rectangle: two independent real balls.

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

#include "holomnum/float.hpp"

namespace holomnum {

using Prec = mpfr_prec_t;

class RealBall {
public:
    /// Exact zero.
    RealBall();
    explicit RealBall(long v);

    static RealBall from_mpz(const mpz_class& v, Prec prec);
    static RealBall from_mpq(const mpq_class& v, Prec prec);
    /// Ball with the given midpoint (copied at its own precision) and radius.
    static RealBall from_mid_rad(const Float& mid, const Float& rad);
    /// Smallest ball (at `prec`) containing [lo, hi].
    static RealBall from_endpoints(const Float& lo, const Float& hi, Prec prec);
    /// Parses "<decimal>" or "<decimal> +/- <decimal>" exactly-ish: the result
    /// contains every real number the text denotes.
    static RealBall from_decimal(std::string_view text, Prec prec);
    /// Ball with infinite radius.
    static RealBall indeterminate();

    const Float& mid() const { return mid_; }
    const Float& rad() const { return rad_; }
    Float& mid() { return mid_; }

    bool is_exact() const { return rad_.is_zero(); }
    bool is_finite() const { return mid_.is_finite() && rad_.is_finite(); }
    bool is_zero() const { return is_exact() && mid_.is_zero(); }
    bool contains_zero() const;
    bool is_positive() const;
    bool is_negative() const;

    /// True when every point of `other` lies in this ball.
    bool contains(const RealBall& other) const;
    bool contains(const mpq_class& q) const;
    bool overlaps(const RealBall& other) const;

    /// Enlarges the radius by `err` (rounded up).
    void add_error(const Float& err);
    void add_error_2exp(long exponent);
    /// Forgets the midpoint's trailing bits: mid rounded to `prec` with the error absorbed.
    void round(Prec prec);

    /// Upper bound for |x| over the ball (radius precision, rounded up).
    Float upper_abs() const;
    /// Lower bound for |x| over the ball, zero when the ball contains zero.
    Float lower_abs() const;
    /// Endpoints rounded outward at `prec` bits.
    Float lower(Prec prec) const;
    Float upper(Prec prec) const;

    /// Relative accuracy in bits: roughly -log2(rad/|mid|); large when exact.
    long rel_accuracy_bits() const;

    std::string to_string(int digits = 20) const;

private:
    Float mid_;
    Float rad_;
};

std::ostream& operator<<(std::ostream& os, const RealBall& b);

RealBall neg(const RealBall& a);
RealBall add(const RealBall& a, const RealBall& b, Prec prec);
RealBall sub(const RealBall& a, const RealBall& b, Prec prec);
RealBall mul(const RealBall& a, const RealBall& b, Prec prec);
RealBall mul_si(const RealBall& a, long c, Prec prec);
RealBall mul_mpz(const RealBall& a, const mpz_class& c, Prec prec);
/// Multiplication by 2^e is exact.
RealBall mul_2exp(const RealBall& a, long e);
/// Throws PrecisionError when the divisor contains zero.
RealBall div(const RealBall& a, const RealBall& b, Prec prec);
RealBall div_si(const RealBall& a, long c, Prec prec);
RealBall sqr(const RealBall& a, Prec prec);
RealBall pow_ui(const RealBall& a, unsigned long e, Prec prec);
/// Smallest ball containing both operands.
RealBall hull(const RealBall& a, const RealBall& b, Prec prec);

RealBall sqrt(const RealBall& a, Prec prec);
RealBall exp(const RealBall& a, Prec prec);
RealBall log(const RealBall& a, Prec prec);
RealBall sin(const RealBall& a, Prec prec);
RealBall cos(const RealBall& a, Prec prec);
RealBall atan(const RealBall& a, Prec prec);
/// x^(p/q) for x > 0 (or x >= 0 when p/q > 0).
RealBall pow_rational(const RealBall& x, const mpq_class& e, Prec prec);

RealBall const_pi(Prec prec);
RealBall const_euler(Prec prec);
RealBall const_log2(Prec prec);

class ComplexBall {
public:
    ComplexBall() = default;
    explicit ComplexBall(long v) : re_(v) {}
    ComplexBall(RealBall re, RealBall im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit ComplexBall(RealBall re) : re_(std::move(re)) {}

    static ComplexBall i();

    const RealBall& re() const { return re_; }
    const RealBall& im() const { return im_; }
    RealBall& re() { return re_; }
    RealBall& im() { return im_; }

    bool is_exact() const { return re_.is_exact() && im_.is_exact(); }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }
    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
    bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
    bool contains(const ComplexBall& other) const {
        return re_.contains(other.re_) && im_.contains(other.im_);
    }
    bool overlaps(const ComplexBall& other) const {
        return re_.overlaps(other.re_) && im_.overlaps(other.im_);
    }

    /// Upper bound on |z| over the rectangle.
    Float upper_abs() const;
    /// Lower bound on |z| over the rectangle (zero if it contains the origin).
    Float lower_abs() const;
    /// max(rad(re), rad(im)).
    Float max_rad() const;

    void add_error(const Float& err) {
        re_.add_error(err);
        im_.add_error(err);
    }

    std::string to_string(int digits = 20) const;

private:
    RealBall re_;
    RealBall im_;
};

std::ostream& operator<<(std::ostream& os, const ComplexBall& b);

ComplexBall neg(const ComplexBall& a);
ComplexBall conj(const ComplexBall& a);
ComplexBall add(const ComplexBall& a, const ComplexBall& b, Prec prec);
ComplexBall sub(const ComplexBall& a, const ComplexBall& b, Prec prec);
ComplexBall mul(const ComplexBall& a, const ComplexBall& b, Prec prec);
ComplexBall mul(const ComplexBall& a, const RealBall& b, Prec prec);
ComplexBall mul_si(const ComplexBall& a, long c, Prec prec);
ComplexBall mul_2exp(const ComplexBall& a, long e);
ComplexBall div(const ComplexBall& a, const ComplexBall& b, Prec prec);
ComplexBall div(const ComplexBall& a, const RealBall& b, Prec prec);
ComplexBall div_si(const ComplexBall& a, long c, Prec prec);
ComplexBall inv(const ComplexBall& a, Prec prec);
ComplexBall sqr(const ComplexBall& a, Prec prec);
ComplexBall pow_ui(const ComplexBall& a, unsigned long e, Prec prec);
/// a + b*c.
ComplexBall addmul(const ComplexBall& a, const ComplexBall& b, const ComplexBall& c, Prec prec);

/// Squared modulus re^2 + im^2.
RealBall norm(const ComplexBall& a, Prec prec);
RealBall abs(const ComplexBall& a, Prec prec);

/// Argument of z in the determination closest to `center`: the returned
/// enclosure lies in (center - pi, center + pi). Throws DomainError when z
/// contains 0 or the enclosure cannot be placed in that window.
RealBall arg(const ComplexBall& z, double center, Prec prec);

ComplexBall exp(const ComplexBall& z, Prec prec);
/// log|z| + i arg(z, center).
ComplexBall log(const ComplexBall& z, double center, Prec prec);
/// z^e = exp(e log z) on the branch selected by `center`. Integer exponents
/// bypass the logarithm and are branch-free.
ComplexBall pow_rational(const ComplexBall& z, const mpq_class& e, double center, Prec prec);
ComplexBall sqrt(const ComplexBall& z, double center, Prec prec);

}  // namespace holomnum
