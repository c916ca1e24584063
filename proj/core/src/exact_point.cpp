#include "holomnum/exact_point.hpp"

#include "holomnum/error.hpp"
#include "holomnum/polynomial.hpp"
#include "holomnum/roots.hpp"

namespace holomnum {

namespace {

// Collapses Gaussian values with zero imaginary part to Q.
FieldElem simplify(FieldElem v) {
    if (v.is_rational() && !v.field()->is_rational()) return FieldElem(v.rational_value());
    return v;
}

bool inside(const ComplexBall& b, const mpq_class& re_lo, const mpq_class& re_hi, const mpq_class& im_lo,
            const mpq_class& im_hi, Prec prec) {
    // Exact comparison of the outward-rounded endpoints with the rational bounds.
    auto le = [](const Float& a, const mpq_class& q) {
        mpq_class v;
        mpfr_get_q(v.get_mpq_t(), a.get());
        return v <= q;
    };
    auto ge = [](const Float& a, const mpq_class& q) {
        mpq_class v;
        mpfr_get_q(v.get_mpq_t(), a.get());
        return v >= q;
    };
    const Prec wp = prec + 8;
    return ge(b.re().lower(wp), re_lo) && le(b.re().upper(wp), re_hi) && ge(b.im().lower(wp), im_lo) &&
           le(b.im().upper(wp), im_hi);
}

bool disjoint(const ComplexBall& b, const mpq_class& re_lo, const mpq_class& re_hi, const mpq_class& im_lo,
              const mpq_class& im_hi, Prec prec) {
    auto q = [&](const Float& f) {
        mpq_class v;
        mpfr_get_q(v.get_mpq_t(), f.get());
        return v;
    };
    const Prec wp = prec + 8;
    return q(b.re().upper(wp)) < re_lo || q(b.re().lower(wp)) > re_hi || q(b.im().upper(wp)) < im_lo ||
           q(b.im().lower(wp)) > im_hi;
}

}  // namespace

ExactPoint::ExactPoint() = default;

ExactPoint::ExactPoint(FieldElem value) : value_(simplify(std::move(value))) {}

ExactPoint ExactPoint::rational(const mpq_class& v) { return ExactPoint(FieldElem(v)); }

ExactPoint ExactPoint::gaussian(const mpq_class& re, const mpq_class& im) {
    if (im == 0) return rational(re);
    return ExactPoint(FieldElem(NumberField::gaussian(), {re, im}));
}

ExactPoint ExactPoint::algebraic(const std::vector<mpq_class>& poly, const mpq_class& re_lo,
                                 const mpq_class& re_hi, const mpq_class& im_lo, const mpq_class& im_hi) {
    if (re_lo > re_hi || im_lo > im_hi) throw DomainError("empty isolating rectangle");
    Polynomial p = Polynomial::from_rationals(poly);
    if (p.degree() < 1) throw DomainError("algebraic point: polynomial must have positive degree");
    p = squarefree_part(p);
    // Remove rational roots: a rational root inside the rectangle is the point itself.
    for (const auto& [c, mult] : rational_roots(p)) {
        (void)mult;
        if (c >= re_lo && c <= re_hi && im_lo <= 0 && im_hi >= 0) {
            // Other roots must still avoid the rectangle.
            for (Prec prec = 64; prec <= 4096; prec *= 2) {
                int in = 0;
                bool unsure = false;
                for (const auto& r : isolate_roots(p, prec)) {
                    if (disjoint(r.ball, re_lo, re_hi, im_lo, im_hi, prec)) continue;
                    if (inside(r.ball, re_lo, re_hi, im_lo, im_hi, prec)) ++in;
                    else unsure = true;
                }
                if (!unsure) {
                    if (in != 1) throw DomainError("rectangle does not isolate exactly one root");
                    return rational(c);
                }
            }
            throw DomainError("cannot certify root isolation in the given rectangle");
        }
        Polynomial lin = Polynomial{0, 1} - Polynomial::constant(FieldElem(c));
        Polynomial q, r;
        divrem(p, lin, q, r);
        p = q;
    }
    if (p.degree() < 1) throw DomainError("rectangle does not isolate exactly one root");
    for (Prec prec = 64; prec <= 4096; prec *= 2) {
        int in = 0;
        bool unsure = false;
        RootEnclosure found;
        for (const auto& r : isolate_roots(p, prec)) {
            if (disjoint(r.ball, re_lo, re_hi, im_lo, im_hi, prec)) continue;
            if (inside(r.ball, re_lo, re_hi, im_lo, im_hi, prec)) {
                ++in;
                found = r;
            } else {
                unsure = true;
            }
        }
        if (unsure) continue;
        if (in != 1) throw DomainError("rectangle does not isolate exactly one root");
        std::vector<mpq_class> modulus;
        for (const auto& c : p.coeffs()) modulus.push_back(c.rational_value());
        if (p.degree() == 2 && modulus[1] == 0 && modulus[0] == modulus[2] && !found.real)
            return gaussian(0, found.ball.im().is_positive() ? 1 : -1);
        FieldPtr f = NumberField::algebraic(std::move(modulus), found.ball, found.real);
        return ExactPoint(FieldElem::generator(f));
    }
    throw DomainError("cannot certify root isolation in the given rectangle");
}

bool ExactPoint::is_real() const {
    switch (field()->kind()) {
        case NumberField::Kind::Rational:
            return true;
        case NumberField::Kind::Gaussian:
            return value_.coeffs()[1] == 0;
        case NumberField::Kind::Algebraic:
            return field()->has_real_generator() || value_.is_rational();
    }
    return false;
}

ComplexBall ExactPoint::eval_ball(Prec prec) const { return value_.to_ball(prec); }

ExactPoint ExactPoint::refine(Prec prec) const {
    if (field()->kind() != NumberField::Kind::Algebraic) return *this;
    const FieldPtr& f = field();
    ComplexBall g = f->generator_ball(prec + 4);
    FieldPtr nf = NumberField::algebraic(f->modulus(), g, f->has_real_generator());
    return ExactPoint(FieldElem(nf, value_.coeffs()));
}

std::string ExactPoint::to_string() const {
    if (field()->kind() != NumberField::Kind::Algebraic) return value_.to_string();
    return value_.to_ball(64).to_string(16);
}

}  // namespace holomnum
