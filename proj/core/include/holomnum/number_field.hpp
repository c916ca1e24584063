#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "holomnum/ball.hpp"

namespace holomnum {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Q, Q(i), or Q(xi) for a root xi of a monic rational polynomial, embedded
/// in C through a certified isolating enclosure of xi.
///
/// Algebraic fields assume the defining polynomial is irreducible; a failed
/// inversion reports it as a DomainError.
class NumberField {
public:
    enum class Kind { Rational, Gaussian, Algebraic };

    static FieldPtr rationals();
    static FieldPtr gaussian();
    /// `modulus` holds the coefficients of the defining polynomial, constant
    /// term first; it is made monic. `enclosure` must isolate the chosen root.
    static FieldPtr algebraic(std::vector<mpq_class> modulus, ComplexBall enclosure, bool real_root);

    Kind kind() const { return kind_; }
    int degree() const { return static_cast<int>(modulus_.size()) - 1; }
    const std::vector<mpq_class>& modulus() const { return modulus_; }
    bool is_rational() const { return kind_ == Kind::Rational; }
    /// True when the generator is a real number (always for Q).
    bool has_real_generator() const { return real_root_; }
    const ComplexBall& enclosure() const { return enclosure_; }

    /// Enclosure of the generator with radius about 2^-prec.
    ComplexBall generator_ball(Prec prec) const;

    /// Same field up to embedding: identical modulus and overlapping isolating enclosures.
    bool same_as(const NumberField& other) const;

    std::string generator_name() const;

private:
    NumberField(Kind kind, std::vector<mpq_class> modulus, ComplexBall enclosure, bool real_root);

    Kind kind_;
    std::vector<mpq_class> modulus_;
    ComplexBall enclosure_;
    bool real_root_;
    mutable std::mutex cache_mutex_;
    mutable std::map<Prec, ComplexBall> cache_;
};

/// Element of a NumberField: sum of c[j] * xi^j, j < degree.
class FieldElem {
public:
    FieldElem();
    FieldElem(long v);  // NOLINT(google-explicit-constructor)
    FieldElem(const mpq_class& v);  // NOLINT(google-explicit-constructor)
    FieldElem(FieldPtr field, std::vector<mpq_class> coeffs);

    static FieldElem generator(const FieldPtr& field);

    const FieldPtr& field() const { return field_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const;
    /// True when the element lies in Q (whatever its field).
    bool is_rational() const;
    /// Requires is_rational().
    const mpq_class& rational_value() const { return c_[0]; }

    ComplexBall to_ball(Prec prec) const;
    std::string to_string() const;

    FieldElem operator-() const;
    FieldElem& operator+=(const FieldElem& o);
    FieldElem& operator-=(const FieldElem& o);
    FieldElem& operator*=(const FieldElem& o);
    FieldElem& operator/=(const FieldElem& o);

    friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
    friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
    friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
    friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }
    friend bool operator==(const FieldElem& a, const FieldElem& b);
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    FieldElem inverse() const;

private:
    // Brings `o` into this element's field (or vice versa); throws on incompatible fields.
    void unify(FieldElem& o);
    void normalize();

    FieldPtr field_;
    std::vector<mpq_class> c_;
};

/// Common field of two elements (the larger one when one is rational).
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

}  // namespace holomnum
