#include "holomnum/summation.hpp"

#include <algorithm>
#include <cmath>

namespace holomnum {

namespace {

constexpr Prec kBoundPrec = 64;
constexpr int kMaxSquarings = 6;  // block lengths up to 64

Float fl(double v) {
    Float f(kBoundPrec);
    mpfr_set_d(f.get(), v, MPFR_RNDU);
    return f;
}
Float mul_up(const Float& a, const Float& b) {
    Float r(kBoundPrec);
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}
Float add_up(const Float& a, const Float& b) {
    Float r(kBoundPrec);
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}
Float pow_up(const Float& a, long e) {
    Float r(kBoundPrec);
    mpfr_pow_si(r.get(), a.get(), e, MPFR_RNDU);
    return r;
}
Float max_of(const Float& a, const Float& b) { return mpfr_cmp(a.get(), b.get()) >= 0 ? a : b; }
bool le_one(const Float& a) { return mpfr_cmp_ui(a.get(), 1) <= 0; }

std::vector<ComplexBall> mat_sqr(const std::vector<ComplexBall>& a, int n, Prec prec) {
    std::vector<ComplexBall> r(a.size());
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const ComplexBall& aik = a[i * n + k];
            if (aik.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                const ComplexBall& akj = a[k * n + j];
                if (akj.is_zero()) continue;
                r[i * n + j] = addmul(r[i * n + j], aik, akj, prec);
            }
        }
    return r;
}

}  // namespace

TailMajorant::TailMajorant(const ThetaFormRecurrence& rec, const mpq_class& nu, int log_order, long n_min)
    : n_min_(n_min), span_(rec.span()), block_(log_order + 1) {
    const int s = span_;
    const int K = log_order;
    if (s == 0) {
        valid_ = true;
        return;
    }
    const int d = rec.q[0].degree();
    const Prec wp = kBoundPrec;
    // eps = 1/n ranges over [0, 1/n_min].
    Float lo(wp), hi(wp);
    mpfr_set_ui(hi.get(), 1, MPFR_RNDU);
    mpfr_div_si(hi.get(), hi.get(), n_min, MPFR_RNDU);
    ComplexBall eps(RealBall::from_endpoints(lo, hi, wp));
    // E_{i,j}(eps) = eps^d * T_{i,j}(1/eps), T_{i,j} the j-th Taylor coefficient
    // polynomial of qhat_i(n) = q_i(nu + n - i).
    std::vector<std::vector<ComplexBall>> E(static_cast<std::size_t>(s + 1),
                                            std::vector<ComplexBall>(static_cast<std::size_t>(K + 1)));
    for (int i = 0; i <= s; ++i) {
        if (rec.q[i].is_zero()) continue;
        Polynomial T = rec.q[i].taylor_shift(FieldElem(mpq_class(nu - i)));
        mpz_class fact = 1;
        for (int j = 0; j <= K; ++j) {
            if (j > 0) {
                T = T.derivative();
                fact *= j;
            }
            if (T.is_zero()) break;
            // Horner in eps over the reversed coefficients: sum_l c_l eps^(d-l).
            ComplexBall acc;
            for (int l = 0; l <= d; ++l) {
                acc = mul(acc, eps, wp);
                if (l <= T.degree()) acc = add(acc, T.coeffs()[l].to_ball(wp), wp);
            }
            E[i][j] = div(acc, ComplexBall(RealBall::from_mpz(fact, wp)), wp);
        }
    }
    if (E[0][0].contains_zero()) return;
    // r_i(X) = B_i(X) / A(X) mod X^(K+1)
    const int D = s * block_;
    std::vector<ComplexBall> C(static_cast<std::size_t>(D * D));
    for (int i = 1; i <= s; ++i) {
        std::vector<ComplexBall> r(static_cast<std::size_t>(K + 1));
        for (int j = 0; j <= K; ++j) {
            ComplexBall v = E[i][j];
            for (int a = 1; a <= j; ++a) v = sub(v, mul(E[0][a], r[j - a], wp), wp);
            r[j] = div(v, E[0][0], wp);
        }
        for (int k = 0; k <= K; ++k)
            for (int j = 0; k + j <= K; ++j) C[k * D + (i - 1) * block_ + k + j] = neg(r[j]);
    }
    for (int b = 1; b < s; ++b)
        for (int k = 0; k <= K; ++k) C[(b * block_ + k) * D + (b - 1) * block_ + k] = ComplexBall(1);
    powers_.push_back(std::move(C));
    for (int b = 1; b <= kMaxSquarings; ++b) powers_.push_back(mat_sqr(powers_.back(), D, wp));
    valid_ = true;
}

std::optional<std::vector<Float>> TailMajorant::bound(const std::vector<Float>& last, const Float& t, int jet_order,
                                                     long from) const {
    std::vector<Float> zeros(static_cast<std::size_t>(jet_order), Float(kBoundPrec));
    if (!valid_ || from < n_min_) return std::nullopt;
    bool all_zero = true;
    for (const auto& v : last) all_zero = all_zero && v.is_zero();
    if (span_ == 0 || all_zero) return zeros;
    const long N = from - 1;
    if (t.is_zero()) {
        if (N + 1 >= jet_order) return zeros;
        return std::nullopt;
    }
    const int s = span_;
    const int D = s * block_;
    const int nb = static_cast<int>(powers_.size());
    // agg[b][a * s + c] = sum over columns of block c of |C^(2^b)[a][col]|
    std::vector<std::vector<Float>> agg(static_cast<std::size_t>(nb));
    for (int b = 0; b < nb; ++b) {
        agg[b].assign(static_cast<std::size_t>(D * s), Float(kBoundPrec));
        for (int a = 0; a < D; ++a)
            for (int col = 0; col < D; ++col) {
                const ComplexBall& e = powers_[b][a * D + col];
                if (e.is_zero()) continue;
                Float& slot = agg[b][a * s + col / block_];
                slot = add_up(slot, e.upper_abs());
            }
    }
    std::optional<std::vector<Float>> best;
    Float best_score(kBoundPrec);
    bool failing = false;
    const double t_d = t.to_double();
    std::vector<Float> rho_pow(static_cast<std::size_t>(2 * s + 1), Float(kBoundPrec));
    // rho = t * 2^e: steps of 1/16 octave up to 8t (so that points close to the
    // radius of convergence validate), then 1/3 octave up to 2^80 t.
    double fail_start = 0;
    for (int k = 1; k <= 279; ++k) {
        const double e = k <= 48 ? k / 16.0 : 3.0 + (k - 48) / 3.0;
        Float rho = fl(t_d * std::pow(2.0, e));
        for (int e = -s; e <= s; ++e) rho_pow[e + s] = pow_up(rho, e);
        // Smallest b with ||C(rho)^(2^b)|| <= 1; G bounds all shorter products.
        Float G = fl(1);
        bool ok = false;
        for (int b = 0; b < nb; ++b) {
            Float norm(kBoundPrec);
            for (int a = 0; a < D; ++a) {
                Float row(kBoundPrec);
                for (int c = 0; c < s; ++c) {
                    const Float& w = agg[b][a * s + c];
                    if (w.is_zero()) continue;
                    row = add_up(row, mul_up(w, rho_pow[c - a / block_ + s]));
                }
                norm = max_of(norm, row);
            }
            norm = mul_up(norm, pow_up(rho, 1L << b));
            if (le_one(norm)) {
                ok = true;
                break;
            }
            G = mul_up(G, max_of(norm, fl(1)));
        }
        if (!ok) {
            if (!best) continue;
            if (!failing) fail_start = e;
            failing = true;
            if (e - fail_start >= 4) break;
            continue;
        }
        failing = false;
        Float M(kBoundPrec);
        for (int i = 0; i < static_cast<int>(last.size()); ++i) M = max_of(M, mul_up(last[i], pow_up(rho, N - i)));
        // x = t / rho, q = x (N+2) / (N+2-j)
        Float x(kBoundPrec);
        mpfr_div(x.get(), t.get(), rho.get(), MPFR_RNDU);
        std::vector<Float> out;
        bool finite = true;
        Float score(kBoundPrec);
        for (int j = 0; j < jet_order; ++j) {
            Float q(kBoundPrec);
            mpfr_mul_si(q.get(), x.get(), N + 2, MPFR_RNDU);
            mpfr_div_si(q.get(), q.get(), N + 2 - j, MPFR_RNDU);
            if (mpfr_cmp_ui(q.get(), 1) >= 0 || N + 1 < j) {
                finite = false;
                break;
            }
            Float one_minus(kBoundPrec);
            mpfr_ui_sub(one_minus.get(), 1, q.get(), MPFR_RNDD);
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(N + 1), static_cast<unsigned long>(j));
            Float bf(kBoundPrec);
            mpfr_set_z(bf.get(), binom.get_mpz_t(), MPFR_RNDU);
            Float T = mul_up(mul_up(G, M), pow_up(rho, -j));
            T = mul_up(T, bf);
            T = mul_up(T, pow_up(x, N + 1 - j));
            mpfr_div(T.get(), T.get(), one_minus.get(), MPFR_RNDU);
            score = max_of(score, T);
            out.push_back(std::move(T));
        }
        if (!finite) continue;
        if (!best || mpfr_cmp(score.get(), best_score.get()) < 0) {
            best = std::move(out);
            best_score = score;
        }
    }
    return best;
}

bool tail_bound_feasible(const ThetaFormRecurrence& rec, const mpq_class& nu, int log_order, long n_max,
                         const Float& t, int jet_order) {
    // The majorant over n >= n_max is the weakest one a summation stopping by
    // n_max can use; if it fails, so do all earlier checks.
    TailMajorant maj(rec, nu, log_order, n_max);
    std::vector<Float> ones(static_cast<std::size_t>(rec.span()), fl(1));
    return maj.valid() && maj.bound(ones, t, jet_order).has_value();
}

std::optional<std::vector<Float>> tail_bound(const ThetaFormRecurrence& rec, const mpq_class& nu, int log_order,
                                             long N, const std::vector<Float>& last, const Float& t, int jet_order) {
    return TailMajorant(rec, nu, log_order, N + 1).bound(last, t, jet_order);
}

}  // namespace holomnum
