#include "holomnum/roots.hpp"

#include <algorithm>
#include <cmath>

#include "holomnum/error.hpp"

namespace holomnum {

namespace {

ComplexBall strip(const ComplexBall& z) {
    Float zero(kMagPrec);
    return ComplexBall(RealBall::from_mid_rad(z.re().mid(), zero), RealBall::from_mid_rad(z.im().mid(), zero));
}

ComplexBall horner(const std::vector<ComplexBall>& c, const ComplexBall& z, Prec prec) {
    ComplexBall acc;
    for (std::size_t k = c.size(); k-- > 0;) acc = add(mul(acc, z, prec), c[k], prec);
    return acc;
}

std::vector<ComplexBall> derivative(const std::vector<ComplexBall>& c, Prec prec) {
    std::vector<ComplexBall> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(mul_si(c[k], static_cast<long>(k), prec));
    return d;
}

std::vector<ComplexBall> aberth(const std::vector<ComplexBall>& c, Prec prec) {
    const int n = static_cast<int>(c.size()) - 1;
    if (n <= 0) return {};
    std::vector<ComplexBall> dc = derivative(c, prec);
    // Cauchy-type bound for the initial circle.
    double lc = c.back().upper_abs().to_double();
    double bound = 0;
    for (int k = 0; k < n; ++k) bound = std::max(bound, std::pow(c[k].upper_abs().to_double() / lc, 1.0 / (n - k)));
    bound = std::max(2 * bound, 1e-3);
    std::vector<ComplexBall> z(n);
    for (int i = 0; i < n; ++i) {
        double t = 2 * M_PI * i / n + 0.4;
        Float re(prec), im(prec);
        mpfr_set_d(re.get(), bound * std::cos(t), MPFR_RNDN);
        mpfr_set_d(im.get(), bound * std::sin(t), MPFR_RNDN);
        z[i] = ComplexBall(RealBall::from_mid_rad(re, Float(kMagPrec)), RealBall::from_mid_rad(im, Float(kMagPrec)));
    }
    const int max_iter = 200 + 20 * static_cast<int>(std::log2(static_cast<double>(prec)));
    for (int iter = 0; iter < max_iter; ++iter) {
        bool converged = true;
        for (int i = 0; i < n; ++i) {
            ComplexBall pv = horner(c, z[i], prec);
            if (pv.is_zero()) continue;
            ComplexBall dv = horner(dc, z[i], prec);
            ComplexBall s;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                ComplexBall diff = strip(sub(z[i], z[j], prec));
                if (diff.is_zero()) continue;
                s = add(s, inv(diff, prec), prec);
            }
            ComplexBall w;
            try {
                ComplexBall ratio = div(strip(pv), strip(dv), prec);
                w = div(ratio, sub(ComplexBall(1), strip(mul(ratio, s, prec)), prec), prec);
            } catch (const PrecisionError&) {
                continue;
            }
            w = strip(w);
            z[i] = strip(sub(z[i], w, prec));
            // Converged when |w| <= 2^(8 - prec) * max(1, |z|).
            Float wa = w.upper_abs();
            if (!wa.is_zero()) {
                Float za = z[i].upper_abs();
                long ze = za.is_zero() ? 1 : std::max<long>(1, mpfr_get_exp(za.get()));
                if (mpfr_get_exp(wa.get()) > ze + 8 - static_cast<long>(prec)) converged = false;
            }
        }
        if (converged) break;
    }
    return z;
}

}  // namespace

std::vector<ComplexBall> approximate_roots(const Polynomial& p, Prec prec) {
    return aberth(p.to_balls(prec), prec);
}

std::vector<RootEnclosure> isolate_roots(const Polynomial& p, Prec prec) {
    if (p.degree() <= 0) return {};
    Polynomial sf = squarefree_part(p);
    const int n = sf.degree();
    const bool real_poly = sf.has_rational_coeffs();
    for (Prec wp = std::max<Prec>(prec + 32, 96); wp <= 16 * (prec + 64); wp *= 2) {
        std::vector<ComplexBall> c = sf.to_balls(wp);
        std::vector<ComplexBall> z = n == 1 ? std::vector<ComplexBall>{strip(neg(div(c[0], c[1], wp)))}
                                            : aberth(c, wp);
        std::vector<Float> rad(n, Float(kMagPrec));
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            ComplexBall den = c.back();
            for (int j = 0; j < n; ++j)
                if (j != i) den = mul(den, sub(z[i], z[j], wp), wp);
            try {
                ComplexBall w = div(horner(c, z[i], wp), den, wp);
                rad[i] = w.upper_abs();
                mpfr_mul_si(rad[i].get(), rad[i].get(), n, MPFR_RNDU);
            } catch (const PrecisionError&) {
                ok = false;
            }
        }
        if (!ok) continue;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j) {
                Float sep = sub(z[i], z[j], wp).lower_abs();
                Float need(kMagPrec);
                mpfr_add(need.get(), rad[i].get(), rad[j].get(), MPFR_RNDU);
                if (mpfr_cmp(sep.get(), need.get()) <= 0) ok = false;
            }
        if (!ok) continue;
        std::vector<RootEnclosure> out(n);
        for (int i = 0; i < n; ++i) {
            out[i].ball = z[i];
            out[i].ball.add_error(rad[i]);
            if (!real_poly) continue;
            // Symmetrize discs touching the real axis: a conjugation-invariant
            // isolating disc holds a real root.
            Float imabs = z[i].im().upper_abs();
            if (mpfr_cmp(imabs.get(), rad[i].get()) > 0) continue;
            Float r2(kMagPrec);
            mpfr_add(r2.get(), rad[i].get(), imabs.get(), MPFR_RNDU);
            bool isolated = true;
            for (int j = 0; j < n && isolated; ++j) {
                if (j == i) continue;
                ComplexBall c0(z[i].re());
                Float sep = sub(c0, z[j], wp).lower_abs();
                Float need(kMagPrec);
                mpfr_add(need.get(), r2.get(), rad[j].get(), MPFR_RNDU);
                if (mpfr_cmp(sep.get(), need.get()) <= 0) isolated = false;
            }
            if (!isolated) continue;
            RealBall re = z[i].re();
            re.add_error(r2);
            out[i].ball = ComplexBall(re);
            out[i].real = true;
        }
        for (auto& e : out) {
            e.ball.re().round(prec + 16);
            e.ball.im().round(prec + 16);
        }
        return out;
    }
    throw PrecisionError("root isolation failed to separate roots");
}

}  // namespace holomnum

namespace holomnum {

std::optional<mpq_class> simplest_rational_in(const RealBall& b, int max_den_bits) {
    if (!b.is_finite()) return std::nullopt;
    mpq_class x;
    mpfr_get_q(x.get_mpq_t(), b.mid().get());
    // Convergents h/k of the continued fraction of x.
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    mpq_class rest = x;
    for (int iter = 0; iter < 4 * max_den_bits + 8; ++iter) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
        mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
        h0 = h1, h1 = h2, k0 = k1, k1 = k2;
        if (mpz_sizeinbase(k1.get_mpz_t(), 2) > static_cast<std::size_t>(max_den_bits)) return std::nullopt;
        mpq_class c(h1, k1);
        c.canonicalize();
        if (b.contains(c)) return c;
        rest -= a;
        if (rest == 0) return std::nullopt;
        rest = 1 / rest;
    }
    return std::nullopt;
}

std::vector<std::pair<mpq_class, int>> rational_roots(const Polynomial& p) {
    std::vector<std::pair<mpq_class, int>> out;
    if (p.degree() <= 0) return out;
    // Exponents met in practice have small denominators; 256 bits leaves
    // ample room for the continued-fraction search.
    for (const RootEnclosure& r : isolate_roots(p, 256)) {
        if (!r.ball.im().contains_zero()) continue;
        auto c = simplest_rational_in(r.ball.re(), 120);
        if (!c) continue;
        Polynomial q = p;
        Polynomial lin = Polynomial{0, 1} - Polynomial::constant(FieldElem(*c));
        int mult = 0;
        for (;;) {
            Polynomial quo, rem;
            divrem(q, lin, quo, rem);
            if (!rem.is_zero()) break;
            q = quo;
            ++mult;
        }
        if (mult > 0) out.emplace_back(*c, mult);
    }
    return out;
}

}  // namespace holomnum
