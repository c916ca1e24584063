#include "holomnum/ball.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <ostream>
#include <string>

#include "holomnum/error.hpp"

namespace holomnum {

namespace {

Float mag() { return Float(kMagPrec); }

// Folds the rounding error of an MPFR call with ternary value `t` into the radius.
void absorb(RealBall& r, int t) {
    if (t != 0 && r.mid().is_finite() && !r.mid().is_zero()) {
        r.add_error_2exp(mpfr_get_exp(r.mid().get()) - static_cast<long>(r.mid().prec()));
    }
}

mpq_class to_mpq(const Float& f) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), f.get());
    return q;
}

// Enclosure of f over [mid - rad, mid + rad] for increasing f.
template <class F>
RealBall monotone(const RealBall& a, Prec prec, F f) {
    Prec wp = prec + 16;
    Float xl = a.lower(wp);
    Float xh = a.upper(wp);
    Float lo(wp), hi(wp);
    f(lo.get(), xl.get(), MPFR_RNDD);
    f(hi.get(), xh.get(), MPFR_RNDU);
    return RealBall::from_endpoints(lo, hi, prec);
}

}  // namespace

RealBall::RealBall() : mid_(64), rad_(kMagPrec) {}

RealBall::RealBall(long v) : mid_(64), rad_(kMagPrec) { mpfr_set_si(mid_.get(), v, MPFR_RNDN); }

RealBall RealBall::from_mpz(const mpz_class& v, Prec prec) {
    RealBall r;
    r.mid_ = Float(prec);
    absorb(r, mpfr_set_z(r.mid_.get(), v.get_mpz_t(), MPFR_RNDN));
    return r;
}

RealBall RealBall::from_mpq(const mpq_class& v, Prec prec) {
    RealBall r;
    r.mid_ = Float(prec);
    absorb(r, mpfr_set_q(r.mid_.get(), v.get_mpq_t(), MPFR_RNDN));
    return r;
}

RealBall RealBall::from_mid_rad(const Float& mid, const Float& rad) {
    RealBall r;
    r.mid_ = mid;
    mpfr_abs(r.rad_.get(), rad.get(), MPFR_RNDU);
    return r;
}

RealBall RealBall::from_endpoints(const Float& lo, const Float& hi, Prec prec) {
    RealBall r;
    r.mid_ = Float(prec);
    // (lo + hi) / 2; any rounding of the midpoint is covered by the radius below.
    Float s(std::max(lo.prec(), hi.prec()) + 1);
    mpfr_add(s.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(r.mid_.get(), s.get(), 1, MPFR_RNDN);
    Float a = mag(), b = mag();
    mpfr_sub(a.get(), hi.get(), r.mid_.get(), MPFR_RNDU);
    mpfr_sub(b.get(), r.mid_.get(), lo.get(), MPFR_RNDU);
    mpfr_max(r.rad_.get(), a.get(), b.get(), MPFR_RNDU);
    if (mpfr_sgn(r.rad_.get()) < 0) mpfr_set_zero(r.rad_.get(), 1);
    return r;
}

RealBall RealBall::from_decimal(std::string_view text, Prec prec) {
    std::string s(text);
    std::string mid_text = s, rad_text;
    if (auto pos = s.find("+/-"); pos != std::string::npos) {
        mid_text = s.substr(0, pos);
        rad_text = s.substr(pos + 3);
    }
    auto trim = [](std::string& t) {
        t.erase(0, t.find_first_not_of(" \t["));
        t.erase(t.find_last_not_of(" \t]") + 1);
    };
    trim(mid_text);
    trim(rad_text);
    RealBall r;
    r.mid_ = Float(prec);
    if (mid_text.empty()) {
        mpfr_set_zero(r.mid_.get(), 1);
    } else {
        absorb(r, mpfr_strtofr(r.mid_.get(), mid_text.c_str(), nullptr, 10, MPFR_RNDN));
    }
    if (!rad_text.empty()) {
        Float e = mag();
        mpfr_strtofr(e.get(), rad_text.c_str(), nullptr, 10, MPFR_RNDU);
        r.add_error(e);
    }
    return r;
}

RealBall RealBall::indeterminate() {
    RealBall r;
    mpfr_set_inf(r.rad_.get(), 1);
    return r;
}

bool RealBall::contains_zero() const { return mpfr_cmpabs(mid_.get(), rad_.get()) <= 0; }

bool RealBall::is_positive() const {
    return mpfr_sgn(mid_.get()) > 0 && mpfr_cmp(mid_.get(), rad_.get()) > 0;
}

bool RealBall::is_negative() const {
    return mpfr_sgn(mid_.get()) < 0 && mpfr_cmpabs(mid_.get(), rad_.get()) > 0;
}

bool RealBall::contains(const RealBall& other) const {
    if (!is_finite()) return !mpfr_nan_p(mid_.get());
    if (!other.is_finite()) return false;
    mpq_class m = to_mpq(mid_), r = to_mpq(rad_);
    mpq_class om = to_mpq(other.mid_), orad = to_mpq(other.rad_);
    return m - r <= om - orad && om + orad <= m + r;
}

bool RealBall::contains(const mpq_class& q) const {
    if (!is_finite()) return !mpfr_nan_p(mid_.get());
    mpq_class d = q - to_mpq(mid_);
    return ::abs(d) <= to_mpq(rad_);
}

bool RealBall::overlaps(const RealBall& other) const {
    if (!is_finite() || !other.is_finite()) return true;
    mpq_class d = to_mpq(mid_) - to_mpq(other.mid_);
    return ::abs(d) <= to_mpq(rad_) + to_mpq(other.rad_);
}

void RealBall::add_error(const Float& err) {
    mpfr_add(rad_.get(), rad_.get(), err.get(), MPFR_RNDU);
}

void RealBall::add_error_2exp(long exponent) {
    Float e = mag();
    mpfr_set_ui_2exp(e.get(), 1, exponent, MPFR_RNDU);
    add_error(e);
}

void RealBall::round(Prec prec) {
    if (mid_.prec() <= prec) return;
    absorb(*this, mpfr_prec_round(mid_.get(), prec, MPFR_RNDN));
}

Float RealBall::upper_abs() const {
    Float u = mag();
    mpfr_abs(u.get(), mid_.get(), MPFR_RNDU);
    mpfr_add(u.get(), u.get(), rad_.get(), MPFR_RNDU);
    return u;
}

Float RealBall::lower_abs() const {
    Float l = mag();
    mpfr_abs(l.get(), mid_.get(), MPFR_RNDD);
    mpfr_sub(l.get(), l.get(), rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(l.get()) < 0) mpfr_set_zero(l.get(), 1);
    return l;
}

Float RealBall::lower(Prec prec) const {
    Float l(prec);
    mpfr_sub(l.get(), mid_.get(), rad_.get(), MPFR_RNDD);
    return l;
}

Float RealBall::upper(Prec prec) const {
    Float u(prec);
    mpfr_add(u.get(), mid_.get(), rad_.get(), MPFR_RNDU);
    return u;
}

long RealBall::rel_accuracy_bits() const {
    if (rad_.is_zero()) return LONG_MAX / 4;
    if (!is_finite()) return -(LONG_MAX / 4);
    if (mid_.is_zero()) return -mpfr_get_exp(rad_.get());
    return mpfr_get_exp(mid_.get()) - mpfr_get_exp(rad_.get());
}

std::string RealBall::to_string(int digits) const {
    return "[" + mid_.to_string(digits) + " +/- " + rad_.to_string(3, MPFR_RNDU) + "]";
}

std::ostream& operator<<(std::ostream& os, const RealBall& b) { return os << b.to_string(); }

RealBall neg(const RealBall& a) {
    RealBall r = a;
    mpfr_neg(r.mid().get(), r.mid().get(), MPFR_RNDN);
    return r;
}

RealBall add(const RealBall& a, const RealBall& b, Prec prec) {
    RealBall r;
    r.mid() = Float(prec);
    int t = mpfr_add(r.mid().get(), a.mid().get(), b.mid().get(), MPFR_RNDN);
    Float e = mag();
    mpfr_add(e.get(), a.rad().get(), b.rad().get(), MPFR_RNDU);
    r.add_error(e);
    absorb(r, t);
    return r;
}

RealBall sub(const RealBall& a, const RealBall& b, Prec prec) {
    RealBall r;
    r.mid() = Float(prec);
    int t = mpfr_sub(r.mid().get(), a.mid().get(), b.mid().get(), MPFR_RNDN);
    Float e = mag();
    mpfr_add(e.get(), a.rad().get(), b.rad().get(), MPFR_RNDU);
    r.add_error(e);
    absorb(r, t);
    return r;
}

RealBall mul(const RealBall& a, const RealBall& b, Prec prec) {
    RealBall r;
    r.mid() = Float(prec);
    int t = mpfr_mul(r.mid().get(), a.mid().get(), b.mid().get(), MPFR_RNDN);
    if (!a.is_exact() || !b.is_exact()) {
        // |a||rb| + |b||ra| + ra*rb
        Float am = mag(), bm = mag(), e = mag(), f = mag();
        mpfr_abs(am.get(), a.mid().get(), MPFR_RNDU);
        mpfr_abs(bm.get(), b.mid().get(), MPFR_RNDU);
        mpfr_mul(e.get(), am.get(), b.rad().get(), MPFR_RNDU);
        mpfr_mul(f.get(), bm.get(), a.rad().get(), MPFR_RNDU);
        mpfr_add(e.get(), e.get(), f.get(), MPFR_RNDU);
        mpfr_mul(f.get(), a.rad().get(), b.rad().get(), MPFR_RNDU);
        mpfr_add(e.get(), e.get(), f.get(), MPFR_RNDU);
        r.add_error(e);
    }
    absorb(r, t);
    return r;
}

RealBall mul_si(const RealBall& a, long c, Prec prec) {
    RealBall r;
    r.mid() = Float(prec);
    int t = mpfr_mul_si(r.mid().get(), a.mid().get(), c, MPFR_RNDN);
    if (!a.is_exact()) {
        Float e = mag();
        mpfr_mul_ui(e.get(), a.rad().get(), static_cast<unsigned long>(c < 0 ? -c : c), MPFR_RNDU);
        r.add_error(e);
    }
    absorb(r, t);
    return r;
}

RealBall mul_mpz(const RealBall& a, const mpz_class& c, Prec prec) {
    RealBall r;
    r.mid() = Float(prec);
    int t = mpfr_mul_z(r.mid().get(), a.mid().get(), c.get_mpz_t(), MPFR_RNDN);
    if (!a.is_exact()) {
        Float e = mag();
        mpz_class ac = ::abs(c);
        mpfr_mul_z(e.get(), a.rad().get(), ac.get_mpz_t(), MPFR_RNDU);
        r.add_error(e);
    }
    absorb(r, t);
    return r;
}

RealBall mul_2exp(const RealBall& a, long e) {
    RealBall r = a;
    mpfr_mul_2si(r.mid().get(), r.mid().get(), e, MPFR_RNDN);
    Float rad = a.rad();
    mpfr_mul_2si(rad.get(), rad.get(), e, MPFR_RNDU);
    return RealBall::from_mid_rad(r.mid(), rad);
}

RealBall div(const RealBall& a, const RealBall& b, Prec prec) {
    if (b.contains_zero()) throw PrecisionError("division by a ball containing zero");
    RealBall r;
    r.mid() = Float(prec);
    int t = mpfr_div(r.mid().get(), a.mid().get(), b.mid().get(), MPFR_RNDN);
    if (!a.is_exact() || !b.is_exact()) {
        // (ra + |ma| rb / |mb|) / (|mb| - rb)
        Float am = mag(), bl = mag(), e = mag(), den = mag();
        mpfr_abs(am.get(), a.mid().get(), MPFR_RNDU);
        mpfr_abs(bl.get(), b.mid().get(), MPFR_RNDD);
        mpfr_mul(e.get(), am.get(), b.rad().get(), MPFR_RNDU);
        mpfr_div(e.get(), e.get(), bl.get(), MPFR_RNDU);
        mpfr_add(e.get(), e.get(), a.rad().get(), MPFR_RNDU);
        mpfr_sub(den.get(), bl.get(), b.rad().get(), MPFR_RNDD);
        if (mpfr_sgn(den.get()) <= 0) throw PrecisionError("division by a ball containing zero");
        mpfr_div(e.get(), e.get(), den.get(), MPFR_RNDU);
        r.add_error(e);
    }
    absorb(r, t);
    return r;
}

RealBall div_si(const RealBall& a, long c, Prec prec) {
    if (c == 0) throw PrecisionError("division by zero");
    RealBall r;
    r.mid() = Float(prec);
    int t = mpfr_div_si(r.mid().get(), a.mid().get(), c, MPFR_RNDN);
    if (!a.is_exact()) {
        Float e = mag();
        mpfr_div_ui(e.get(), a.rad().get(), static_cast<unsigned long>(c < 0 ? -c : c), MPFR_RNDU);
        r.add_error(e);
    }
    absorb(r, t);
    return r;
}

RealBall sqr(const RealBall& a, Prec prec) { return mul(a, a, prec); }

RealBall pow_ui(const RealBall& a, unsigned long e, Prec prec) {
    RealBall result(1), base = a;
    while (e) {
        if (e & 1) result = mul(result, base, prec);
        e >>= 1;
        if (e) base = mul(base, base, prec);
    }
    return result;
}

RealBall hull(const RealBall& a, const RealBall& b, Prec prec) {
    Prec wp = prec + 8;
    Float al = a.lower(wp), bl = b.lower(wp), ah = a.upper(wp), bh = b.upper(wp);
    Float lo(wp), hi(wp);
    mpfr_min(lo.get(), al.get(), bl.get(), MPFR_RNDD);
    mpfr_max(hi.get(), ah.get(), bh.get(), MPFR_RNDU);
    return RealBall::from_endpoints(lo, hi, prec);
}

RealBall sqrt(const RealBall& a, Prec prec) {
    if (a.is_negative()) throw DomainError("sqrt of a negative ball");
    Prec wp = prec + 16;
    Float xl = a.lower(wp);
    if (mpfr_sgn(xl.get()) < 0) {
        if (!a.contains_zero()) throw DomainError("sqrt of negative ball");
        mpfr_set_zero(xl.get(), 1);
    }
    Float xh = a.upper(wp);
    Float lo(wp), hi(wp);
    mpfr_sqrt(lo.get(), xl.get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), xh.get(), MPFR_RNDU);
    return RealBall::from_endpoints(lo, hi, prec);
}

RealBall exp(const RealBall& a, Prec prec) {
    if (a.is_zero()) return RealBall(1);
    return monotone(a, prec, [](mpfr_ptr r, mpfr_srcptr x, mpfr_rnd_t d) { mpfr_exp(r, x, d); });
}

RealBall log(const RealBall& a, Prec prec) {
    if (!a.is_positive()) throw DomainError("log of a ball that is not certainly positive");
    Float xl = a.lower(prec + 16);
    if (mpfr_sgn(xl.get()) <= 0) throw DomainError("log of a ball that is not certainly positive");
    return monotone(a, prec, [](mpfr_ptr r, mpfr_srcptr x, mpfr_rnd_t d) { mpfr_log(r, x, d); });
}

RealBall atan(const RealBall& a, Prec prec) {
    return monotone(a, prec, [](mpfr_ptr r, mpfr_srcptr x, mpfr_rnd_t d) { mpfr_atan(r, x, d); });
}

RealBall sin(const RealBall& a, Prec prec) {
    RealBall r;
    r.mid() = Float(prec);
    int t = mpfr_sin(r.mid().get(), a.mid().get(), MPFR_RNDN);
    r.add_error(a.rad());
    absorb(r, t);
    return r;
}

RealBall cos(const RealBall& a, Prec prec) {
    RealBall r;
    r.mid() = Float(prec);
    int t = mpfr_cos(r.mid().get(), a.mid().get(), MPFR_RNDN);
    r.add_error(a.rad());
    absorb(r, t);
    return r;
}

RealBall pow_rational(const RealBall& x, const mpq_class& e, Prec prec) {
    if (e.get_den() == 1) {
        mpz_class n = e.get_num();
        if (n >= 0) return pow_ui(x, n.get_ui(), prec);
        return div(RealBall(1), pow_ui(x, mpz_class(-n).get_ui(), prec), prec);
    }
    if (e > 0 && x.is_zero()) return RealBall();
    Prec wp = prec + 16;
    return exp(mul(RealBall::from_mpq(e, wp), log(x, wp), wp), prec);
}

namespace {
template <class F>
RealBall constant(Prec prec, F f) {
    Prec wp = prec + 8;
    Float lo(wp), hi(wp);
    f(lo.get(), MPFR_RNDD);
    f(hi.get(), MPFR_RNDU);
    return RealBall::from_endpoints(lo, hi, prec);
}
}  // namespace

RealBall const_pi(Prec prec) {
    return constant(prec, [](mpfr_ptr r, mpfr_rnd_t d) { mpfr_const_pi(r, d); });
}

RealBall const_euler(Prec prec) {
    return constant(prec, [](mpfr_ptr r, mpfr_rnd_t d) { mpfr_const_euler(r, d); });
}

RealBall const_log2(Prec prec) {
    return constant(prec, [](mpfr_ptr r, mpfr_rnd_t d) { mpfr_const_log2(r, d); });
}

// ---------------------------------------------------------------------------
// Complex balls

ComplexBall ComplexBall::i() { return ComplexBall(RealBall(), RealBall(1)); }

Float ComplexBall::upper_abs() const {
    Float a = re_.upper_abs(), b = im_.upper_abs();
    mpfr_hypot(a.get(), a.get(), b.get(), MPFR_RNDU);
    return a;
}

Float ComplexBall::lower_abs() const {
    Float a = re_.lower_abs(), b = im_.lower_abs();
    mpfr_hypot(a.get(), a.get(), b.get(), MPFR_RNDD);
    return a;
}

Float ComplexBall::max_rad() const {
    Float r(kMagPrec);
    mpfr_max(r.get(), re_.rad().get(), im_.rad().get(), MPFR_RNDU);
    return r;
}

std::string ComplexBall::to_string(int digits) const {
    if (im_.is_zero()) return re_.to_string(digits);
    return re_.to_string(digits) + " + " + im_.to_string(digits) + "*I";
}

std::ostream& operator<<(std::ostream& os, const ComplexBall& b) { return os << b.to_string(); }

ComplexBall neg(const ComplexBall& a) { return {neg(a.re()), neg(a.im())}; }
ComplexBall conj(const ComplexBall& a) { return {a.re(), neg(a.im())}; }

ComplexBall add(const ComplexBall& a, const ComplexBall& b, Prec prec) {
    return {add(a.re(), b.re(), prec), add(a.im(), b.im(), prec)};
}

ComplexBall sub(const ComplexBall& a, const ComplexBall& b, Prec prec) {
    return {sub(a.re(), b.re(), prec), sub(a.im(), b.im(), prec)};
}

ComplexBall mul(const ComplexBall& a, const ComplexBall& b, Prec prec) {
    if (b.im().is_zero()) return mul(a, b.re(), prec);
    if (a.im().is_zero()) return mul(b, a.re(), prec);
    RealBall re = sub(mul(a.re(), b.re(), prec), mul(a.im(), b.im(), prec), prec);
    RealBall im = add(mul(a.re(), b.im(), prec), mul(a.im(), b.re(), prec), prec);
    return {std::move(re), std::move(im)};
}

ComplexBall mul(const ComplexBall& a, const RealBall& b, Prec prec) {
    if (a.im().is_zero()) return ComplexBall(mul(a.re(), b, prec));
    return {mul(a.re(), b, prec), mul(a.im(), b, prec)};
}

ComplexBall mul_si(const ComplexBall& a, long c, Prec prec) {
    if (a.im().is_zero()) return ComplexBall(mul_si(a.re(), c, prec));
    return {mul_si(a.re(), c, prec), mul_si(a.im(), c, prec)};
}

ComplexBall mul_2exp(const ComplexBall& a, long e) {
    return {mul_2exp(a.re(), e), mul_2exp(a.im(), e)};
}

ComplexBall addmul(const ComplexBall& a, const ComplexBall& b, const ComplexBall& c, Prec prec) {
    return add(a, mul(b, c, prec), prec);
}

RealBall norm(const ComplexBall& a, Prec prec) {
    if (a.im().is_zero()) return sqr(a.re(), prec);
    return add(sqr(a.re(), prec), sqr(a.im(), prec), prec);
}

RealBall abs(const ComplexBall& a, Prec prec) {
    if (a.im().is_zero()) {
        RealBall r = a.re();
        if (mpfr_sgn(r.mid().get()) < 0) r = neg(r);
        if (!r.contains_zero()) return r;
        Float hi = r.upper(prec + 8), lo(prec + 8);
        return RealBall::from_endpoints(lo, hi, prec);
    }
    Prec wp = prec + 8;
    Float lo = a.lower_abs(), hi = a.upper_abs();
    RealBall n = norm(a, wp);
    if (n.is_positive()) return sqrt(n, prec);
    return RealBall::from_endpoints(lo, hi, prec);
}

ComplexBall div(const ComplexBall& a, const RealBall& b, Prec prec) {
    if (a.im().is_zero()) return ComplexBall(div(a.re(), b, prec));
    return {div(a.re(), b, prec), div(a.im(), b, prec)};
}

ComplexBall div_si(const ComplexBall& a, long c, Prec prec) {
    if (a.im().is_zero()) return ComplexBall(div_si(a.re(), c, prec));
    return {div_si(a.re(), c, prec), div_si(a.im(), c, prec)};
}

ComplexBall div(const ComplexBall& a, const ComplexBall& b, Prec prec) {
    if (b.im().is_zero()) return div(a, b.re(), prec);
    Prec wp = prec + 8;
    RealBall n = norm(b, wp);
    return div(mul(a, conj(b), wp), n, prec);
}

ComplexBall inv(const ComplexBall& a, Prec prec) { return div(ComplexBall(1), a, prec); }

ComplexBall sqr(const ComplexBall& a, Prec prec) { return mul(a, a, prec); }

ComplexBall pow_ui(const ComplexBall& a, unsigned long e, Prec prec) {
    ComplexBall result(1), base = a;
    while (e) {
        if (e & 1) result = mul(result, base, prec);
        e >>= 1;
        if (e) base = mul(base, base, prec);
    }
    return result;
}

RealBall arg(const ComplexBall& z, double center, Prec prec) {
    Prec wp = prec + 16;
    Float xl = z.re().lower(wp), xh = z.re().upper(wp);
    Float yl = z.im().lower(wp), yh = z.im().upper(wp);
    bool x_has_zero = mpfr_sgn(xl.get()) <= 0 && mpfr_sgn(xh.get()) >= 0;
    bool y_has_zero = mpfr_sgn(yl.get()) <= 0 && mpfr_sgn(yh.get()) >= 0;
    if (x_has_zero && y_has_zero) throw DomainError("argument of a ball containing zero");
    // A rectangle touching the negative real axis is handled as pi + arg(-z).
    bool flip = y_has_zero && mpfr_sgn(xh.get()) < 0;
    RealBall pi = const_pi(wp);
    Float lo(wp), hi(wp), t(wp);
    mpfr_set_inf(lo.get(), 1);
    mpfr_set_inf(hi.get(), -1);
    const Float* xs[2] = {&xl, &xh};
    const Float* ys[2] = {&yl, &yh};
    Float nx(wp), ny(wp);
    for (auto* x : xs) {
        for (auto* y : ys) {
            mpfr_srcptr xv = x->get(), yv = y->get();
            if (flip) {
                mpfr_neg(nx.get(), xv, MPFR_RNDN);
                mpfr_neg(ny.get(), yv, MPFR_RNDN);
                xv = nx.get();
                yv = ny.get();
            }
            mpfr_atan2(t.get(), yv, xv, MPFR_RNDD);
            mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
            mpfr_atan2(t.get(), yv, xv, MPFR_RNDU);
            mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
        }
    }
    Float pl = pi.lower(wp), ph = pi.upper(wp);
    if (flip) {
        mpfr_add(lo.get(), lo.get(), pl.get(), MPFR_RNDD);
        mpfr_add(hi.get(), hi.get(), ph.get(), MPFR_RNDU);
    }
    double amid = 0.5 * (mpfr_get_d(lo.get(), MPFR_RNDN) + mpfr_get_d(hi.get(), MPFR_RNDN));
    long k = std::lround((center - amid) / (2 * M_PI));
    if (k != 0) {
        Float sl(wp), sh(wp);
        mpfr_mul_si(sl.get(), k > 0 ? pl.get() : ph.get(), 2 * k, MPFR_RNDD);
        mpfr_mul_si(sh.get(), k > 0 ? ph.get() : pl.get(), 2 * k, MPFR_RNDU);
        mpfr_add(lo.get(), lo.get(), sl.get(), MPFR_RNDD);
        mpfr_add(hi.get(), hi.get(), sh.get(), MPFR_RNDU);
    }
    // window check: (center - pi, center + pi)
    Float wl(wp), wh(wp);
    mpfr_set_d(wl.get(), center, MPFR_RNDN);
    mpfr_sub(wl.get(), wl.get(), ph.get(), MPFR_RNDU);
    mpfr_set_d(wh.get(), center, MPFR_RNDN);
    mpfr_add(wh.get(), wh.get(), pl.get(), MPFR_RNDD);
    if (mpfr_cmp(lo.get(), wl.get()) <= 0 || mpfr_cmp(hi.get(), wh.get()) >= 0)
        throw DomainError("branch ambiguity: argument enclosure straddles the selected cut");
    return RealBall::from_endpoints(lo, hi, prec);
}

ComplexBall exp(const ComplexBall& z, Prec prec) {
    Prec wp = prec + 8;
    RealBall m = exp(z.re(), wp);
    if (z.im().is_zero()) {
        m.round(prec);
        return ComplexBall(std::move(m));
    }
    return {mul(m, cos(z.im(), wp), prec), mul(m, sin(z.im(), wp), prec)};
}

ComplexBall log(const ComplexBall& z, double center, Prec prec) {
    Prec wp = prec + 8;
    RealBall re;
    if (z.im().is_zero() && z.re().is_positive()) {
        re = log(z.re(), prec);
    } else {
        re = mul_2exp(log(norm(z, wp), prec), -1);
    }
    RealBall im = arg(z, center, prec);
    if (im.is_zero()) return ComplexBall(std::move(re));
    return {std::move(re), std::move(im)};
}

ComplexBall pow_rational(const ComplexBall& z, const mpq_class& e, double center, Prec prec) {
    if (e.get_den() == 1) {
        mpz_class n = e.get_num();
        if (n >= 0) return pow_ui(z, n.get_ui(), prec);
        return inv(pow_ui(z, mpz_class(-n).get_ui(), prec + 8), prec);
    }
    if (e > 0 && z.is_zero()) return ComplexBall();
    Prec wp = prec + 16;
    ComplexBall l = log(z, center, wp);
    return exp(mul(l, RealBall::from_mpq(e, wp), wp), prec);
}

ComplexBall sqrt(const ComplexBall& z, double center, Prec prec) {
    return pow_rational(z, mpq_class(1, 2), center, prec);
}

}  // namespace holomnum
