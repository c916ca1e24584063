#pragma once

// Reference values and exact helpers shared by the unit, property and
// acceptance tests. Constants come from independent sources (MPFR's own
// elementary functions at high precision, or published digit strings);
// nothing here goes through the library's summation code.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <string_view>
#include <vector>

#include "holomnum/ball.hpp"

namespace holomnum::oracle {

// Published digit strings.
inline constexpr const char* kE = "2.71828182845904523536028747135266249775724709369995957496696762772407663";
inline constexpr const char* kErfiOne = "1.65042575879754287602533772956136244389";
inline constexpr const char* kPi = "3.14159265358979323846264338327950288419716939937510582097494459";
inline constexpr const char* kLog2 = "0.693147180559945309417232121458176568075500134360255254120680009";
inline constexpr const char* kBesselK0One = "0.421024438240708333335627379212609036136219748226660472298969";
inline constexpr const char* kZeta3 = "1.20205690315959428539973816151144999076498629234049888179227155";
inline constexpr const char* kLatticeEntry = "1.1058437979212047601829954708859";
inline constexpr const char* kAperyCombination = "4.546376247522844600239593024915161553303";
inline constexpr const char* kAperyConstant = "0.220043767112643";

/// Exact value of a decimal literal ("1.25", "-3e-5").
inline mpq_class decimal(std::string_view text) {
    std::string s(text);
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        exp10 = std::stol(s.substr(e + 1));
        s.erase(e);
    }
    bool negative = !s.empty() && s[0] == '-';
    if (negative || (!s.empty() && s[0] == '+')) s.erase(0, 1);
    if (auto dot = s.find('.'); dot != std::string::npos) {
        exp10 -= static_cast<long>(s.size() - dot - 1);
        s.erase(dot, 1);
    }
    mpz_class mant(s, 10);
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    mpq_class q = exp10 < 0 ? mpq_class(mant, p10) : mpq_class(mant * p10);
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
}

/// One unit in the last place of a decimal literal.
inline mpq_class last_place(std::string_view text) {
    auto dot = text.find('.');
    long decimals = dot == std::string_view::npos ? 0 : static_cast<long>(text.size() - dot - 1);
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
    return mpq_class(1, p10);
}

inline mpq_class to_mpq(const Float& f) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), f.get());
    return q;
}

/// True when the interval [mid - rad - tol, mid + rad + tol] holds `value`.
inline bool contains_within(const RealBall& b, const mpq_class& value, const mpq_class& tol) {
    if (!b.is_finite()) return false;
    return abs(to_mpq(b.mid()) - value) <= to_mpq(b.rad()) + tol;
}

/// The ball matches a truncated decimal reference up to one unit in its last place.
inline bool matches(const RealBall& b, std::string_view digits) {
    return contains_within(b, decimal(digits), last_place(digits));
}

inline bool radius_le(const RealBall& b, std::string_view bound) {
    return b.is_finite() && to_mpq(b.rad()) <= decimal(bound);
}

/// e^q from MPFR at `prec` bits, as an exact rational with its rounding error.
inline RealBall mpfr_exp_ball(const mpq_class& q, mpfr_prec_t prec) {
    Float x(prec), y(prec);
    mpfr_set_q(x.get(), q.get_mpq_t(), MPFR_RNDN);
    Float lo(prec), hi(prec);
    // q is rounded first, so widen by the input error through exp' <= e^(q+1).
    mpfr_set_q(lo.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.get(), q.get_mpq_t(), MPFR_RNDU);
    mpfr_exp(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
    return RealBall::from_endpoints(lo, hi, prec);
}

/// Exact Taylor coefficients of simple series used as tail-bound corpus.
inline std::vector<mpq_class> exp_coefficients(int n) {
    std::vector<mpq_class> c(static_cast<std::size_t>(n));
    mpq_class v = 1;
    for (int k = 0; k < n; ++k) {
        if (k > 0) v /= k;
        c[static_cast<std::size_t>(k)] = v;
    }
    return c;
}

inline std::vector<mpq_class> geometric_coefficients(int n) { return std::vector<mpq_class>(static_cast<std::size_t>(n), 1); }

/// I_0(x) = sum (x/2)^(2m) / m!^2.
inline std::vector<mpq_class> bessel_i0_coefficients(int n) {
    std::vector<mpq_class> c(static_cast<std::size_t>(n), 0);
    mpq_class v = 1;
    for (int m = 0; 2 * m < n; ++m) {
        if (m > 0) v /= mpq_class(4 * m * m);
        c[static_cast<std::size_t>(2 * m)] = v;
    }
    return c;
}

/// sum_{n = from}^{to - 1} binom(n, j) |c_n| t^(n - j): a lower bound for the
/// exact tail of a series with nonnegative coefficients.
inline mpq_class partial_tail(const std::vector<mpq_class>& c, int from, int j, const mpq_class& t) {
    mpq_class sum = 0;
    for (int n = from; n < static_cast<int>(c.size()); ++n) {
        if (n < j) continue;
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(j));
        mpq_class tp = 1;
        for (int k = 0; k < n - j; ++k) tp *= t;
        sum += mpq_class(binom) * abs(c[static_cast<std::size_t>(n)]) * tp;
    }
    return sum;
}

}  // namespace holomnum::oracle
