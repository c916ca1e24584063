#include <mpfr.h>

#include <nlohmann/json.hpp>
#include <string>

#include "cli.hpp"

namespace holomnum::cli {

namespace {

struct Digits {
    std::string digits;  // no sign
    bool negative = false;
    long exp10 = 0;  // value = 0.digits * 10^exp10
};

Digits get_digits(const Float& x, std::size_t n, mpfr_rnd_t rnd) {
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, n, x.get(), rnd);
    Digits d;
    d.digits = s;
    mpfr_free_str(s);
    if (!d.digits.empty() && d.digits[0] == '-') {
        d.negative = true;
        d.digits.erase(0, 1);
    }
    d.exp10 = e;
    return d;
}

mpq_class to_rational(const Digits& d) {
    mpz_class mant(d.digits, 10);
    long shift = d.exp10 - static_cast<long>(d.digits.size());
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    mpq_class q = shift < 0 ? mpq_class(mant, p10) : mpq_class(mant * p10);
    q.canonicalize();
    return d.negative ? mpq_class(-q) : q;
}

std::string render(const Digits& d) {
    std::string out = d.negative ? "-" : "";
    const long e = d.exp10 - 1;  // scientific exponent
    const auto n = static_cast<long>(d.digits.size());
    if (e >= -5 && e < 21) {
        if (e >= 0) {
            if (n <= e + 1) {
                out += d.digits + std::string(static_cast<std::size_t>(e + 1 - n), '0');
            } else {
                out += d.digits.substr(0, static_cast<std::size_t>(e + 1)) + "." +
                       d.digits.substr(static_cast<std::size_t>(e + 1));
            }
        } else {
            out += "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + d.digits;
        }
        return out;
    }
    out += d.digits.substr(0, 1);
    if (n > 1) out += "." + d.digits.substr(1);
    out += (e < 0 ? "e-" : "e+") + std::to_string(e < 0 ? -e : e);
    return out;
}

std::string render_radius(const Float& r) {
    if (r.is_zero()) return "0";
    if (!r.is_finite()) return "inf";
    Digits d = get_digits(r, 3, MPFR_RNDU);
    const long e = d.exp10 - 1;
    return d.digits.substr(0, 1) + "." + d.digits.substr(1) + (e < 0 ? "e-" : "e+") + std::to_string(e < 0 ? -e : e);
}

long floor_log10(const Float& x) {
    // floor(log10 |x|) from the printed exponent: 0.d * 10^e with d >= 1
    Digits d = get_digits(x, 1, MPFR_RNDZ);
    return d.exp10 - 1;
}

}  // namespace

std::string approx_decimal(const Float& x, int digits) {
    if (x.is_zero()) return "0";
    Digits d = get_digits(x, static_cast<std::size_t>(digits), MPFR_RNDN);
    while (d.digits.size() > 1 && d.digits.back() == '0') d.digits.pop_back();
    return render(d);
}

DecimalBall to_decimal(const RealBall& b) {
    DecimalBall out;
    const Float& m = b.mid();
    const Float& r = b.rad();
    if (!b.is_finite()) {
        out.rad = "inf";
        return out;
    }
    Float am(m.prec());
    mpfr_abs(am.get(), m.get(), MPFR_RNDN);
    if (m.is_zero() || mpfr_cmp(am.get(), r.get()) <= 0) {
        Float bound(kMagPrec);
        mpfr_add(bound.get(), am.get(), r.get(), MPFR_RNDU);
        out.rad = render_radius(bound);
        return out;
    }
    std::size_t n = 0;
    if (r.is_zero()) {
        n = 0;  // shortest round-trip digits
    } else {
        // Digits down to the decade of the radius, trailing zeros kept.
        long span = floor_log10(m) - floor_log10(r);
        n = static_cast<std::size_t>(std::max(span, 1L));
    }
    Digits d = get_digits(m, n, MPFR_RNDN);
    if (r.is_zero())
        while (d.digits.size() > 1 && d.digits.back() == '0') d.digits.pop_back();
    // Printing error, computed exactly and folded into the radius.
    mpq_class exact_mid;
    mpfr_get_q(exact_mid.get_mpq_t(), m.get());
    mpq_class err = abs(to_rational(d) - exact_mid);
    Float total(kMagPrec);
    mpfr_set_q(total.get(), err.get_mpq_t(), MPFR_RNDU);
    mpfr_add(total.get(), total.get(), r.get(), MPFR_RNDU);
    out.mid = render(d);
    out.rad = render_radius(total);
    return out;
}

std::string format_ball(const RealBall& b) {
    if (b.is_zero()) return "0";
    DecimalBall d = to_decimal(b);
    if (d.mid.empty()) return "[+/- " + d.rad + "]";
    return "[" + d.mid + " +/- " + d.rad + "]";
}

std::string format_ball(const ComplexBall& b) {
    if (b.im().is_zero()) return format_ball(b.re());
    if (b.re().is_zero()) return format_ball(b.im()) + "*I";
    return format_ball(b.re()) + " + " + format_ball(b.im()) + "*I";
}

std::string format_ball_json(const ComplexBall& b) {
    auto part = [](const RealBall& x) {
        DecimalBall d = to_decimal(x);
        return nlohmann::json{{"mid", d.mid.empty() ? "0" : d.mid}, {"rad", d.rad}};
    };
    return nlohmann::json{{"real", part(b.re())}, {"imag", part(b.im())}}.dump();
}

}  // namespace holomnum::cli
