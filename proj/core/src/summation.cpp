#include "holomnum/summation.hpp"

#include <algorithm>

#include "holomnum/error.hpp"

namespace holomnum {

namespace {

// First m Taylor coefficients of the polynomial p at x (repeated synthetic division).
std::vector<ComplexBall> taylor_at(std::vector<ComplexBall> p, const ComplexBall& x, int m, Prec prec) {
    std::vector<ComplexBall> out(static_cast<std::size_t>(m));
    for (int j = 0; j < m && !p.empty(); ++j) {
        ComplexBall acc;
        std::vector<ComplexBall> quo(p.size() - 1);
        for (std::size_t k = p.size(); k-- > 0;) {
            acc = add(mul(acc, x, prec), p[k], prec);
            if (k > 0) quo[k - 1] = acc;
        }
        out[j] = acc;
        p = std::move(quo);
    }
    return out;
}

Float two_pow(long e) {
    Float f(kMagPrec);
    mpfr_set_ui_2exp(f.get(), 1, e, MPFR_RNDU);
    return f;
}

Float max_abs(const std::vector<ComplexBall>& v) {
    Float m(kMagPrec);
    for (const auto& c : v) {
        Float a = c.upper_abs();
        if (mpfr_cmp(a.get(), m.get()) > 0) m = a;
    }
    return m;
}

bool all_le(const std::vector<Float>& v, const Float& target) {
    for (const auto& x : v)
        if (mpfr_cmp(x.get(), target.get()) > 0) return false;
    return true;
}

void check_labels(const SummationPlan& plan) {
    if (plan.labels.empty()) throw DomainError("summation plan without basis elements");
    if (plan.jet_order < 1) throw DomainError("jet order must be positive");
    for (const auto& l : plan.labels) {
        mpq_class rel = l.nu - plan.cluster.base;
        if (rel.get_den() != 1 || rel < 0 || l.k >= plan.cluster.multiplicity_at(static_cast<int>(rel.get_num().get_si())))
            throw DomainError("basis element outside the exponent cluster");
    }
}

// With real recurrence coefficients and a real z the partial sums are real,
// so the tail only widens their real parts.
bool real_partial_sums(const SummationPlan& plan) {
    auto real = [](const FieldPtr& f) { return f->has_real_generator(); };
    return real(plan.rec.field()) && (real(plan.z.field()) || plan.z.is_rational());
}

void add_tail(ComplexBall& c, const Float& err, bool real) {
    if (real) c.re().add_error(err);
    else c.add_error(err);
}

}  // namespace

SummationResult sum_naive(const SummationPlan& plan) {
    check_labels(plan);
    const ThetaFormRecurrence& rec = plan.rec;
    const int s = rec.span();
    const int K = plan.cluster.total_multiplicity() - 1;
    const int r = plan.jet_order;
    const Prec prec = plan.prec;
    const mpq_class& nu = plan.cluster.base;
    const std::size_t L = plan.labels.size();
    const int n_exact = plan.cluster.max_offset() + 1;

    std::vector<LogSeries> init;
    for (const auto& label : plan.labels) init.push_back(expand_local_solution(rec, plan.cluster, label, n_exact));
    std::vector<std::vector<ComplexBall>> qh(static_cast<std::size_t>(s + 1));
    for (int i = 0; i <= s; ++i)
        if (!rec.q[i].is_zero()) qh[i] = rec.q[i].taylor_shift(FieldElem(mpq_class(nu - i))).to_balls(prec);

    const ComplexBall z = plan.z.to_ball(prec);
    const Float t = z.upper_abs();
    const Float target = two_pow(-plan.target_bits);
    const int H = std::max(s, 1);
    // hist[l][n % H] = u_n for label l
    std::vector<std::vector<std::vector<ComplexBall>>> hist(
        L, std::vector<std::vector<ComplexBall>>(static_cast<std::size_t>(H),
                                                 std::vector<ComplexBall>(static_cast<std::size_t>(K + 1))));
    std::vector<std::vector<std::vector<ComplexBall>>> P(
        L, std::vector<std::vector<ComplexBall>>(static_cast<std::size_t>(K + 1),
                                                 std::vector<ComplexBall>(static_cast<std::size_t>(r))));
    std::vector<ComplexBall> wpow(static_cast<std::size_t>(r));
    wpow[0] = ComplexBall(1);
    // Highest log power met so far per solution. Beyond the cluster offsets no
    // new powers appear, so the tail only touches these levels.
    std::vector<int> log_degree(L, 0);

    const long n_max = 8 * plan.target_bits + 2000;
    // With margin: a step that only validates near the term limit is split.
    if (!tail_bound_feasible(rec, nu, K, n_max / 4, t, r))
        throw StepTooLargeError("series summation: evaluation point too far for the tail majorant");
    long next_check = 0;
    std::optional<TailMajorant> maj;
    Float min_scaled_rad(kMagPrec);
    SummationResult res;
    std::vector<std::vector<ComplexBall>> tco(static_cast<std::size_t>(s + 1));
    for (long n = 0;; ++n) {
        if (n > n_max) throw PrecisionError("series summation: no tail bound within the term limit");
        const bool recur = n >= n_exact;
        if (recur) {
            ComplexBall nb(RealBall::from_mpz(mpz_class(n), prec));
            for (int i = 0; i <= s; ++i)
                tco[i] = qh[i].empty() ? std::vector<ComplexBall>() : taylor_at(qh[i], nb, K + 1, prec);
        }
        Float mag(kMagPrec);
        Float rad(kMagPrec);
        for (std::size_t l = 0; l < L; ++l) {
            std::vector<ComplexBall> u(static_cast<std::size_t>(K + 1));
            if (!recur) {
                for (int k = 0; k <= K; ++k) u[k] = init[l].u[n][k].to_ball(prec);
            } else {
                std::vector<ComplexBall> rhs(static_cast<std::size_t>(K + 1));
                for (int i = 1; i <= s && i <= n; ++i) {
                    if (tco[i].empty()) continue;
                    const auto& prev = hist[l][(n - i) % H];
                    for (int k = 0; k <= K; ++k)
                        for (int j = 0; k + j <= K; ++j)
                            if (!prev[k + j].is_zero()) rhs[k] = sub(rhs[k], mul(tco[i][j], prev[k + j], prec), prec);
                }
                const auto& h = tco[0];
                for (int k = K; k >= 0; --k) {
                    ComplexBall v = rhs[k];
                    for (int j = 1; k + j <= K; ++j) v = sub(v, mul(h[j], u[k + j], prec), prec);
                    u[k] = div(v, h[0], prec);
                }
            }
            for (int k = 0; k <= K; ++k) {
                if (u[k].is_zero()) continue;
                if (!u[k].is_finite()) throw PrecisionError("series summation lost all accuracy");
                log_degree[l] = std::max(log_degree[l], k);
                for (int j = 0; j < r; ++j) P[l][k][j] = addmul(P[l][k][j], u[k], wpow[j], prec);
            }
            Float m = max_abs(u);
            if (mpfr_cmp(m.get(), mag.get()) > 0) mag = m;
            for (const auto& c : u) {
                Float cr = c.max_rad();
                if (mpfr_cmp(cr.get(), rad.get()) > 0) rad = cr;
            }
            hist[l][n % H] = std::move(u);
        }
        for (int j = r - 1; j >= 0; --j) wpow[j] = add(mul(wpow[j], z, prec), j > 0 ? wpow[j - 1] : ComplexBall(), prec);

        if (recur && !rad.is_zero()) {
            // Radius growth of the ball recurrence outpacing the decay of t^n
            // means more working precision is needed; give up early.
            Float scaled(kMagPrec);
            mpfr_pow_si(scaled.get(), t.get(), n, MPFR_RNDD);
            mpfr_mul(scaled.get(), scaled.get(), rad.get(), MPFR_RNDD);
            if (min_scaled_rad.is_zero() || mpfr_cmp(scaled.get(), min_scaled_rad.get()) < 0) min_scaled_rad = scaled;
            Float limit(kMagPrec);
            mpfr_mul_2ui(limit.get(), min_scaled_rad.get(), 64, MPFR_RNDU);
            if (mpfr_cmp(scaled.get(), target.get()) > 0 && mpfr_cmp(scaled.get(), limit.get()) > 0)
                throw PrecisionError("series summation: working precision too low for this recurrence");
        }
        if (n + 1 < n_exact || n + 1 < r || (n < next_check && n != n_max)) continue;
        // Trigger a tail check once the current term is below the target.
        Float term(kMagPrec);
        mpfr_pow_si(term.get(), t.get(), n, MPFR_RNDU);
        mpfr_mul(term.get(), term.get(), mag.get(), MPFR_RNDU);
        if (mpfr_cmp(term.get(), target.get()) > 0) continue;
        next_check = n + std::max<long>(8, n / 3);
        // A majorant over n >= n0 serves every later check; rebuild it (tighter)
        // once n has doubled.
        if (!maj || n + 1 >= 2 * maj->n_min()) maj.emplace(rec, nu, K, n + 1);
        if (!maj->valid()) {
            maj.reset();
            continue;
        }
        std::vector<std::vector<Float>> bounds;
        bool ok = true;
        for (std::size_t l = 0; l < L && ok; ++l) {
            std::vector<Float> last;
            for (int i = 0; i < s; ++i) last.push_back(n - i >= 0 ? max_abs(hist[l][(n - i) % H]) : Float(kMagPrec));
            auto b = maj->bound(last, t, r, n + 1);
            if (!b || !all_le(*b, target)) ok = false;
            else bounds.push_back(std::move(*b));
        }
        if (!ok) continue;
        res.terms = n + 1;
        for (std::size_t l = 0; l < L; ++l)
            for (int j = 0; j < r; ++j) {
                if (mpfr_cmp(bounds[l][j].get(), res.tail.get()) > 0) res.tail = bounds[l][j];
                for (int k = 0; k <= log_degree[l]; ++k) add_tail(P[l][k][j], bounds[l][j], real_partial_sums(plan));
            }
        break;
    }
    for (std::size_t l = 0; l < L; ++l) res.jets.push_back(assemble_log_jet(P[l], nu, z, plan.branch, r, prec));
    res.used = SumAlgorithm::Naive;
    return res;
}

}  // namespace holomnum

namespace holomnum {

namespace {

/// Z[xi]/(m) for a monic integral m of degree dk (dk = 1 gives Z), and
/// truncated power series over it: an element of O[h]/h^r is stored as r*dk
/// integers, coordinate c of the h^j coefficient at index j*dk + c.
class IntegralRing {
public:
    IntegralRing(const FieldPtr& field, int r) : field_(field), r_(r) {
        const auto& mod = field->modulus();
        dk_ = static_cast<int>(mod.size()) - 1;
        for (const auto& c : mod) {
            if (c.get_den() != 1) throw UnsupportedError("binary splitting needs an integral defining polynomial");
            m_.push_back(c.get_num());
        }
    }

    using Elem = std::vector<mpz_class>;

    int dk() const { return dk_; }
    int r() const { return r_; }
    std::size_t size() const { return static_cast<std::size_t>(r_ * dk_); }
    Elem zero() const { return Elem(size()); }
    Elem scalar(const mpz_class& v) const {
        Elem e = zero();
        e[0] = v;
        return e;
    }
    static bool is_zero(const Elem& e) {
        for (const auto& c : e)
            if (sgn(c) != 0) return false;
        return true;
    }

    /// out += a * b
    void addmul(Elem& out, const Elem& a, const Elem& b) const {
        if (dk_ == 1) {
            for (int i = 0; i < r_; ++i) {
                if (sgn(a[i]) == 0) continue;
                for (int j = 0; i + j < r_; ++j)
                    if (sgn(b[j]) != 0) mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
            }
            return;
        }
        std::vector<mpz_class> tmp(static_cast<std::size_t>(2 * dk_ - 1));
        for (int j = 0; j < r_; ++j) {
            bool any = false;
            for (auto& c : tmp) c = 0;
            for (int ja = 0; ja <= j; ++ja) {
                const mpz_class* pa = &a[ja * dk_];
                const mpz_class* pb = &b[(j - ja) * dk_];
                for (int x = 0; x < dk_; ++x) {
                    if (sgn(pa[x]) == 0) continue;
                    for (int y = 0; y < dk_; ++y)
                        if (sgn(pb[y]) != 0) {
                            mpz_addmul(tmp[x + y].get_mpz_t(), pa[x].get_mpz_t(), pb[y].get_mpz_t());
                            any = true;
                        }
                }
            }
            if (!any) continue;
            // xi^d = -sum_{i<d} m_i xi^i
            for (int deg = 2 * dk_ - 2; deg >= dk_; --deg) {
                if (sgn(tmp[deg]) == 0) continue;
                for (int i = 0; i < dk_; ++i)
                    if (sgn(m_[i]) != 0) mpz_submul(tmp[deg - dk_ + i].get_mpz_t(), tmp[deg].get_mpz_t(), m_[i].get_mpz_t());
                tmp[deg] = 0;
            }
            for (int x = 0; x < dk_; ++x) out[j * dk_ + x] += tmp[x];
        }
    }
    Elem mul(const Elem& a, const Elem& b) const {
        Elem out = zero();
        addmul(out, a, b);
        return out;
    }
    static void scale(Elem& e, const mpz_class& c) {
        for (auto& x : e) x *= c;
    }

    /// Element of O (h^0 only) from integral field coordinates.
    Elem from_coords(const std::vector<mpz_class>& c) const {
        Elem e = zero();
        for (std::size_t i = 0; i < c.size() && i < static_cast<std::size_t>(dk_); ++i) e[i] = c[i];
        return e;
    }

    ComplexBall coord_ball(const Elem& e, int j, const mpz_class& den, Prec prec) const {
        ComplexBall g = field_->generator_ball(prec);
        ComplexBall acc;
        for (int c = dk_; c-- > 0;) {
            acc = mul(acc, g, prec);
            acc = add(acc, ComplexBall(RealBall::from_mpz(e[j * dk_ + c], prec)), prec);
        }
        return div(acc, ComplexBall(RealBall::from_mpz(den, prec)), prec);
    }

private:
    static ComplexBall mul(const ComplexBall& a, const ComplexBall& b, Prec prec) { return holomnum::mul(a, b, prec); }
    static ComplexBall add(const ComplexBall& a, const ComplexBall& b, Prec prec) { return holomnum::add(a, b, prec); }
    static ComplexBall div(const ComplexBall& a, const ComplexBall& b, Prec prec) { return holomnum::div(a, b, prec); }

    FieldPtr field_;
    int r_;
    int dk_ = 1;
    std::vector<mpz_class> m_;
};

using Elem = IntegralRing::Elem;

struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<Elem> e;
    IntMatrix() = default;
    IntMatrix(int r, int c, const IntegralRing& ring) : rows(r), cols(c), e(static_cast<std::size_t>(r * c), ring.zero()) {}
    Elem& at(int i, int j) { return e[i * cols + j]; }
    const Elem& at(int i, int j) const { return e[i * cols + j]; }
};

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b, const IntegralRing& ring) {
    IntMatrix c(a.rows, b.cols, ring);
    std::vector<char> bz(b.e.size());
    for (std::size_t i = 0; i < b.e.size(); ++i) bz[i] = IntegralRing::is_zero(b.e[i]);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Elem& aik = a.at(i, k);
            if (IntegralRing::is_zero(aik)) continue;
            for (int j = 0; j < b.cols; ++j)
                if (!bz[k * b.cols + j]) ring.addmul(c.at(i, j), aik, b.at(k, j));
        }
    return c;
}

/// Affine step product: V_hi = P V_lo / Q and Sum_hi = Sum_lo + R V_lo / Q.
struct Product {
    IntMatrix P, R;
    mpz_class Q;
};

/// Integral data of the recurrence in the variable n, with the evaluation point
/// folded in: u~_n = u_n w^n, w = z + h.
class BinarySplitter {
public:
    BinarySplitter(const SummationPlan& plan, const FieldPtr& field)
        : ring_(field, plan.jet_order), s_(plan.rec.span()), K_(plan.cluster.total_multiplicity() - 1) {
        const mpq_class& nu = plan.cluster.base;
        // qhat_i(n) = q_i(nu + n - i), then one common integer denominator.
        std::vector<Polynomial> qh;
        mpz_class den = 1;
        for (int i = 0; i <= s_; ++i) {
            qh.push_back(plan.rec.q[i].taylor_shift(FieldElem(mpq_class(nu - i))));
            for (const auto& c : qh.back().coeffs())
                for (const auto& x : c.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
        }
        for (const auto& p : qh) {
            std::vector<std::vector<mpz_class>> coeffs;
            for (const auto& c : p.coeffs()) coeffs.push_back(integral_coords(c, den));
            q_.push_back(std::move(coeffs));
        }
        // z = znum / zden
        zden_ = 1;
        for (const auto& x : plan.z.coeffs()) mpz_lcm(zden_.get_mpz_t(), zden_.get_mpz_t(), x.get_den_mpz_t());
        Elem w = ring_.from_coords(integral_coords(plan.z, zden_));
        if (ring_.r() > 1) w[ring_.dk()] = zden_;  // + zden h
        // W_i = (znum + zden h)^i zden^(s-i)
        Elem pw = ring_.scalar(1);
        for (int i = 0; i <= s_; ++i) {
            Elem wi = pw;
            mpz_class zp;
            mpz_pow_ui(zp.get_mpz_t(), zden_.get_mpz_t(), static_cast<unsigned long>(s_ - i));
            IntegralRing::scale(wi, zp);
            W_.push_back(std::move(wi));
            pw = ring_.mul(pw, w);
        }
    }

    const IntegralRing& ring() const { return ring_; }
    int dim() const { return s_ * (K_ + 1); }

    Product range(long lo, long hi) const {
        if (hi - lo == 1) return leaf(lo);
        long mid = lo + (hi - lo) / 2;
        Product left = range(lo, mid);
        Product right = range(mid, hi);
        return combine(right, left);
    }

    Product combine(const Product& right, const Product& left) const {
        Product out;
        out.P = mat_mul(right.P, left.P, ring_);
        out.R = mat_mul(right.R, left.P, ring_);
        for (std::size_t i = 0; i < out.R.e.size(); ++i) {
            Elem t = left.R.e[i];
            IntegralRing::scale(t, right.Q);
            for (std::size_t c = 0; c < t.size(); ++c) out.R.e[i][c] += t[c];
        }
        out.Q = right.Q * left.Q;
        return out;
    }

private:
    std::vector<mpz_class> integral_coords(const FieldElem& c, const mpz_class& den) const {
        std::vector<mpz_class> out;
        for (const auto& x : c.coeffs()) {
            mpq_class v = x * den;
            out.push_back(v.get_num());
        }
        out.resize(static_cast<std::size_t>(ring_.dk()));
        return out;
    }

    // Taylor coefficients (up to K) of q_i at the integer n, as field coordinates.
    std::vector<std::vector<mpz_class>> taylor(int i, long n) const {
        std::vector<std::vector<mpz_class>> p = q_[i];
        std::vector<std::vector<mpz_class>> out(static_cast<std::size_t>(K_ + 1),
                                                std::vector<mpz_class>(static_cast<std::size_t>(ring_.dk())));
        for (int j = 0; j <= K_ && !p.empty(); ++j) {
            std::vector<mpz_class> acc(static_cast<std::size_t>(ring_.dk()));
            std::vector<std::vector<mpz_class>> quo(p.size() - 1);
            for (std::size_t k = p.size(); k-- > 0;) {
                for (int c = 0; c < ring_.dk(); ++c) acc[c] = acc[c] * n + p[k][c];
                if (k > 0) quo[k - 1] = acc;
            }
            out[j] = acc;
            p = std::move(quo);
        }
        return out;
    }

    Product leaf(long n) const {
        const int B = K_ + 1;
        const int D = dim();
        // q_0 is rational: a_j are integers (coordinate 0).
        auto a = taylor(0, n);
        mpz_class Dn = a[0][0];
        std::vector<mpz_class> Binv(static_cast<std::size_t>(B));
        mpz_pow_ui(Binv[0].get_mpz_t(), Dn.get_mpz_t(), static_cast<unsigned long>(K_));
        for (int j = 1; j <= K_; ++j) {
            mpz_class acc = 0;
            for (int i = 1; i <= j; ++i) acc += a[i][0] * Binv[j - i];
            mpz_divexact(Binv[j].get_mpz_t(), acc.get_mpz_t(), Dn.get_mpz_t());
            Binv[j] = -Binv[j];
        }
        Product p;
        mpz_class zs;
        mpz_pow_ui(zs.get_mpz_t(), zden_.get_mpz_t(), static_cast<unsigned long>(s_));
        mpz_pow_ui(p.Q.get_mpz_t(), Dn.get_mpz_t(), static_cast<unsigned long>(B));
        p.Q *= zs;
        p.P = IntMatrix(D, D, ring_);
        for (int i = 1; i <= s_; ++i) {
            if (q_[i].empty()) continue;
            auto c = taylor(i, n);
            for (int j = 0; j <= K_; ++j) {
                // e_ij = sum_a Binv_a c_{i, j-a}
                std::vector<mpz_class> e(static_cast<std::size_t>(ring_.dk()));
                for (int aa = 0; aa <= j; ++aa)
                    for (int x = 0; x < ring_.dk(); ++x) e[x] += Binv[aa] * c[j - aa][x];
                Elem entry = ring_.mul(ring_.from_coords(e), W_[i]);
                if (IntegralRing::is_zero(entry)) continue;
                for (auto& x : entry) x = -x;
                for (int k = 0; k + j <= K_; ++k) p.P.at(k, (i - 1) * B + k + j) = entry;
            }
        }
        for (int b = 1; b < s_; ++b)
            for (int k = 0; k < B; ++k) p.P.at(b * B + k, (b - 1) * B + k) = ring_.scalar(p.Q);
        p.R = IntMatrix(B, D, ring_);
        for (int k = 0; k < B; ++k)
            for (int col = 0; col < D; ++col) p.R.at(k, col) = p.P.at(k, col);
        return p;
    }

    IntegralRing ring_;
    int s_;
    int K_;
    std::vector<std::vector<std::vector<mpz_class>>> q_;
    mpz_class zden_;
    std::vector<Elem> W_;
};

// Truncated power series in h over the step field, for the exact initial segment.
using FieldJet = std::vector<FieldElem>;

FieldJet jet_mul(const FieldJet& a, const FieldJet& b) {
    FieldJet r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

}  // namespace

SummationResult sum_binary_splitting(const SummationPlan& plan) {
    check_labels(plan);
    const ThetaFormRecurrence& rec = plan.rec;
    const int s = rec.span();
    const int K = plan.cluster.total_multiplicity() - 1;
    const int B = K + 1;
    const int r = plan.jet_order;
    const Prec prec = plan.prec;
    const mpq_class& nu = plan.cluster.base;
    const std::size_t L = plan.labels.size();
    const FieldPtr field = common_field(rec.field(), plan.z.field());
    if (s == 0) return sum_naive(plan);
    BinarySplitter bs(plan, field);
    const IntegralRing& ring = bs.ring();
    const int D = bs.dim();
    const long n0 = std::max(plan.cluster.max_offset() + 1, 1);

    // Exact initial segment: u~_m = u_m w^m for m < n0.
    std::vector<LogSeries> init;
    for (const auto& label : plan.labels) init.push_back(expand_local_solution(rec, plan.cluster, label, static_cast<int>(n0)));
    FieldJet w(static_cast<std::size_t>(r));
    w[0] = plan.z;
    if (r > 1) w[1] = FieldElem(1);
    std::vector<FieldJet> wpow;
    {
        FieldJet p(static_cast<std::size_t>(r));
        p[0] = FieldElem(1);
        for (long m = 0; m < n0; ++m) {
            wpow.push_back(p);
            p = jet_mul(p, w);
        }
    }
    // Per label: Sigma0[k] and V0 (blocks i = 0..s-1 hold u~_{n0-1-i}).
    std::vector<std::vector<FieldJet>> sigma0(L, std::vector<FieldJet>(static_cast<std::size_t>(B), FieldJet(static_cast<std::size_t>(r))));
    std::vector<std::vector<FieldJet>> V0(L, std::vector<FieldJet>(static_cast<std::size_t>(D), FieldJet(static_cast<std::size_t>(r))));
    for (std::size_t l = 0; l < L; ++l)
        for (long m = 0; m < n0; ++m)
            for (int k = 0; k < B; ++k) {
                const FieldElem& c = init[l].u[m][k];
                if (c.is_zero()) continue;
                FieldJet t = wpow[m];
                for (auto& x : t) x *= c;
                for (int j = 0; j < r; ++j) sigma0[l][k][j] += t[j];
                long blk = n0 - 1 - m;
                if (blk < s) V0[l][blk * B + k] = t;
            }
    // Integral initial vectors with a common denominator.
    mpz_class den0 = 1;
    for (const auto& v : V0)
        for (const auto& jet : v)
            for (const auto& c : jet)
                for (const auto& x : c.coeffs()) mpz_lcm(den0.get_mpz_t(), den0.get_mpz_t(), x.get_den_mpz_t());
    std::vector<IntMatrix> V0int;
    for (std::size_t l = 0; l < L; ++l) {
        IntMatrix v(D, 1, ring);
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < r; ++j) {
                FieldElem c = V0[l][i][j];
                const auto& co = c.coeffs();
                for (std::size_t x = 0; x < co.size() && x < static_cast<std::size_t>(ring.dk()); ++x) {
                    mpq_class q = co[x] * den0;
                    v.at(i, 0)[j * ring.dk() + x] = q.get_num();
                }
            }
        V0int.push_back(std::move(v));
    }

    // Truncation order from a cheap low-precision run.
    SummationPlan probe = plan;
    probe.prec = 64;
    long N = std::max<long>(sum_naive(probe).terms, n0 + 1);

    const ComplexBall z = plan.z.to_ball(prec);
    const Float t = z.upper_abs();
    const Float target = two_pow(-plan.target_bits);
    Product prod = bs.range(n0, N);
    for (int attempt = 0;; ++attempt) {
        // Last s terms u_{N-1-i} from u~ = u w^n: h^0 coefficient over z^n.
        mpz_class den = prod.Q * den0;
        std::vector<std::vector<ComplexBall>> sums(L);
        std::vector<std::vector<Float>> bounds;
        bool ok = true;
        TailMajorant maj(rec, nu, K, N);
        for (std::size_t l = 0; l < L && ok; ++l) {
            IntMatrix VN = mat_mul(prod.P, V0int[l], ring);
            std::vector<Float> last;
            for (int i = 0; i < s; ++i) {
                Float m(kMagPrec);
                for (int k = 0; k < B; ++k) {
                    ComplexBall c = ring.coord_ball(VN.at(i * B + k, 0), 0, den, 64);
                    if (!c.is_zero()) c = div(c, pow_ui(plan.z.to_ball(64), static_cast<unsigned long>(N - 1 - i), 64), 64);
                    Float a = c.upper_abs();
                    if (mpfr_cmp(a.get(), m.get()) > 0) m = a;
                }
                last.push_back(m);
            }
            auto b = maj.valid() ? maj.bound(last, t, r) : std::nullopt;
            if (!b || !all_le(*b, target)) ok = false;
            else bounds.push_back(std::move(*b));
        }
        if (ok) break;
        if (attempt >= 6) throw PrecisionError("binary splitting: no tail bound within the term limit");
        long N2 = N + std::max<long>(16, N / 2);
        prod = bs.combine(bs.range(N, N2), prod);
        N = N2;
    }

    SummationResult res;
    res.terms = N;
    res.used = SumAlgorithm::BinarySplitting;
    const mpz_class den = prod.Q * den0;
    TailMajorant maj(rec, nu, K, N);
    for (std::size_t l = 0; l < L; ++l) {
        IntMatrix SN = mat_mul(prod.R, V0int[l], ring);
        IntMatrix VN = mat_mul(prod.P, V0int[l], ring);
        std::vector<Float> last;
        for (int i = 0; i < s; ++i) {
            Float m(kMagPrec);
            for (int k = 0; k < B; ++k) {
                ComplexBall c = ring.coord_ball(VN.at(i * B + k, 0), 0, den, 64);
                if (!c.is_zero()) c = div(c, pow_ui(plan.z.to_ball(64), static_cast<unsigned long>(N - 1 - i), 64), 64);
                Float a = c.upper_abs();
                if (mpfr_cmp(a.get(), m.get()) > 0) m = a;
            }
            last.push_back(m);
        }
        std::vector<Float> tb = *maj.bound(last, t, r);
        std::vector<std::vector<ComplexBall>> P(static_cast<std::size_t>(B), std::vector<ComplexBall>(static_cast<std::size_t>(r)));
        // Log powers absent from the partial sum and the last terms stay absent in the tail.
        int log_degree = 0;
        for (int k = 0; k < B; ++k) {
            bool present = false;
            for (int j = 0; j < r; ++j) {
                P[k][j] = add(sigma0[l][k][j].to_ball(prec), ring.coord_ball(SN.at(k, 0), j, den, prec), prec);
                present = present || !P[k][j].is_zero();
            }
            for (int i = 0; i < s; ++i) present = present || !ring.coord_ball(VN.at(i * B + k, 0), 0, den, 64).is_zero();
            if (present) log_degree = k;
        }
        for (int k = 0; k <= log_degree; ++k)
            for (int j = 0; j < r; ++j) add_tail(P[k][j], tb[j], real_partial_sums(plan));
        for (int j = 0; j < r; ++j)
            if (mpfr_cmp(tb[j].get(), res.tail.get()) > 0) res.tail = tb[j];
        res.jets.push_back(assemble_log_jet(P, nu, z, plan.branch, r, prec));
    }
    return res;
}

SummationResult sum_series(const SummationPlan& plan) {
    switch (plan.algorithm) {
        case SumAlgorithm::Naive:
            return sum_naive(plan);
        case SumAlgorithm::BinarySplitting:
            return sum_binary_splitting(plan);
        case SumAlgorithm::Auto:
            break;
    }
    // Binary splitting multiplies dense D x D matrices, D = span * (K + 1);
    // it only pays off once the precision is large compared to D.
    const long dim = std::max(plan.rec.span(), 1) * plan.cluster.total_multiplicity();
    if (plan.target_bits > 256 * dim) {
        try {
            return sum_binary_splitting(plan);
        } catch (const UnsupportedError&) {
        }
    }
    return sum_naive(plan);
}

}  // namespace holomnum
