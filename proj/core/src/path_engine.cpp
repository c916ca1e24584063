#include "holomnum/path_engine.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "holomnum/error.hpp"

namespace holomnum {

namespace {

constexpr double kStepFraction = 0.45;  // of the convergence radius; must stay < 1/2
constexpr std::size_t kMaxSteps = 100000;

/// Root enclosures of the leading coefficient, refined on demand.
class SingularityMap {
public:
    explicit SingularityMap(const DiffOperator& L) : L_(L) {
        if (L.is_zero()) throw DomainError("zero operator");
        lead_degree_ = L.leading().degree();
        refine(128);
    }

    const std::vector<RootEnclosure>& roots() const { return roots_; }
    Prec prec() const { return prec_; }

    void refine(Prec prec) {
        prec_ = prec;
        roots_ = lead_degree_ > 0 ? L_.singularities(prec) : std::vector<RootEnclosure>{};
    }

    bool more() {
        if (prec_ >= 8192) return false;
        refine(prec_ * 2);
        return true;
    }

    /// Lower bound on the distance from x to the singular points other than x.
    Float distance(const ExactPoint& x, bool x_singular) {
        for (;;) {
            ComplexBall xb = x.eval_ball(prec_ + 16);
            Float best(kMagPrec);
            mpfr_set_inf(best.get(), 1);
            bool excluded = false;
            bool retry = false;
            for (const auto& root : roots_) {
                ComplexBall d = sub(root.ball, xb, prec_ + 16);
                Float lo = d.lower_abs();
                if (lo.is_zero()) {
                    if (x_singular && !excluded) {
                        excluded = true;
                        continue;
                    }
                    retry = true;
                    break;
                }
                if (mpfr_cmp(lo.get(), best.get()) < 0) best = lo;
            }
            if (!retry && (!x_singular || excluded)) return best;
            if (!more()) throw DomainError("cannot separate " + x.to_string() + " from the singular points");
        }
    }

    /// Throws when the closed segment [a, b] may contain a singular point
    /// other than its (singular) endpoints.
    void check_segment(const ExactPoint& a, bool a_sing, const ExactPoint& b, bool b_sing) {
        for (;;) {
            const Prec wp = prec_ + 16;
            ComplexBall ab = a.eval_ball(wp);
            ComplexBall bb = b.eval_ball(wp);
            ComplexBall dir = sub(bb, ab, wp);
            RealBall len2 = norm(dir, wp);
            bool retry = false;
            for (const auto& root : roots_) {
                if ((a_sing && root.ball.overlaps(ab)) || (b_sing && root.ball.overlaps(bb))) continue;
                // Certified miss: the root projects off the line or outside [a, b].
                ComplexBall w = mul(sub(root.ball, ab, wp), conj(dir), wp);
                if (!w.im().contains_zero() || w.re().is_negative() || sub(w.re(), len2, wp).is_positive()) continue;
                retry = true;
                break;
            }
            if (!retry) return;
            if (!more() || prec_ > 1024)
                throw DomainError("the segment from " + a.to_string() + " to " + b.to_string() +
                                  " passes through a singular point");
        }
    }

private:
    const DiffOperator& L_;
    int lead_degree_ = 0;
    Prec prec_ = 0;
    std::vector<RootEnclosure> roots_;
};

bool le_half(const Float& dist, const Float& radius) {
    if (mpfr_inf_p(radius.get())) return true;
    Float half(kMagPrec);
    mpfr_div_2ui(half.get(), radius.get(), 1, MPFR_RNDD);
    return mpfr_cmp(dist.get(), half.get()) <= 0;
}

Float upper_distance(const ExactPoint& a, const ExactPoint& b) {
    if (a == b) return Float(kMagPrec);
    ExactPoint d = b - a;
    return d.eval_ball(64).upper_abs();
}

/// Dyadic point near a + tau (b - a), |tau (b - a)| about kStepFraction * rho,
/// certified at distance <= rho / 2 from a.
ExactPoint advance(const ExactPoint& a, const ExactPoint& b, const Float& rho, bool real) {
    long g = 8 - mpfr_get_exp(rho.get());  // grid 2^-g well below rho
    if (g < 8) g = 8;
    const Prec wp = 64 + static_cast<Prec>(g > 0 ? g : 0) + 64;
    ComplexBall ab = a.eval_ball(wp);
    ComplexBall dir = sub(b.eval_ball(wp), ab, wp);
    for (double frac = kStepFraction;; frac *= 0.75) {
        Float len = dir.upper_abs();
        Float scale(wp);
        mpfr_set_d(scale.get(), frac, MPFR_RNDN);
        mpfr_mul(scale.get(), scale.get(), rho.get(), MPFR_RNDN);
        mpfr_div(scale.get(), scale.get(), len.get(), MPFR_RNDN);
        ComplexBall target = add(ab, mul(dir, RealBall::from_mid_rad(scale, Float(kMagPrec)), wp), wp);
        auto to_grid = [&](const RealBall& x) {
            Float t(wp);
            mpfr_mul_2si(t.get(), x.mid().get(), g, MPFR_RNDN);
            mpz_class z;
            mpfr_get_z(z.get_mpz_t(), t.get(), MPFR_RNDN);
            mpq_class q(z);
            mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(g));
            return q;
        };
        mpq_class re = to_grid(target.re());
        mpq_class im = real ? mpq_class(0) : to_grid(target.im());
        ExactPoint next = ExactPoint::gaussian(re, im);
        if (next != a && le_half(upper_distance(a, next), rho)) return next;
        if (frac < 1e-3) throw PrecisionError("cannot place an intermediate path point");
    }
}

int order_of(const DiffOperator& L) {
    if (L.is_zero()) throw DomainError("zero operator");
    return L.order();
}

double principal_branch(const ExactPoint& from, const ExactPoint& to) {
    ComplexBall z = (to - from).eval_ball(64);
    return std::atan2(z.im().mid().to_double(), z.re().mid().to_double());
}

/// Columns: canonical basis at x0 (ordinary or regular singular), rows: jet
/// coefficients at x1.
BallMatrix basis_jets(const DiffOperator& L, const ExactPoint& x0, const ExactPoint& x1, double branch,
                      long target_bits, Prec prec, SumAlgorithm algorithm) {
    const int r = order_of(L);
    DiffOperator shifted = L.translate(x0.value());
    ThetaFormRecurrence t = shifted.theta_form();
    LocalBasisStructure s = local_basis_structure(t, r);
    BallMatrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(r));
    FieldElem z = x1.value() - x0.value();
    for (std::size_t c = 0; c < s.clusters.size(); ++c) {
        SummationPlan plan;
        plan.rec = t;
        plan.cluster = s.clusters[c];
        std::vector<std::size_t> cols;
        for (std::size_t i = 0; i < s.monomials.size(); ++i)
            if (s.cluster_of(s.monomials[i]) == c) {
                plan.labels.push_back(s.monomials[i]);
                cols.push_back(i);
            }
        plan.z = z;
        plan.branch = branch;
        plan.jet_order = r;
        plan.target_bits = target_bits;
        plan.prec = prec;
        plan.algorithm = algorithm;
        SummationResult res = sum_series(plan);
        for (std::size_t l = 0; l < cols.size(); ++l)
            for (int j = 0; j < r; ++j) m(static_cast<std::size_t>(j), cols[l]) = res.jets[l][static_cast<std::size_t>(j)];
    }
    return m;
}

long eps_bits(const mpq_class& eps) {
    if (sgn(eps) <= 0) throw std::invalid_argument("eps must be positive");
    // ceil(-log2 eps) from the exact rational
    Float e(128);
    mpfr_set_q(e.get(), eps.get_mpq_t(), MPFR_RNDD);
    mpfr_log2(e.get(), e.get(), MPFR_RNDD);
    long bits = static_cast<long>(std::ceil(-mpfr_get_d(e.get(), MPFR_RNDD)));
    return std::max(bits, 1L);
}

bool radius_le(const Float& rad, const mpq_class& eps) {
    return mpfr_cmp_q(rad.get(), eps.get_mpq_t()) <= 0;
}

/// Replaces a step the tail majorant cannot handle by two shorter ones; the
/// singular endpoint, if any, keeps its own (shorter) step.
std::vector<PathStep> split_step(const PathStep& step) {
    const Float len = upper_distance(step.from, step.to);
    if (mpfr_cmp_si_2exp(len.get(), 1, -40) < 0) throw PrecisionError("path step cannot be shortened further");
    const bool real = step.from.is_real() && step.to.is_real();
    using Kind = PathStep::Kind;
    if (step.kind == Kind::ToSingular) {
        ExactPoint mid = advance(step.to, step.from, len, real);
        return {{Kind::Ordinary, step.from, mid}, {Kind::ToSingular, mid, step.to}};
    }
    ExactPoint mid = advance(step.from, step.to, len, real);
    return {{step.kind, step.from, mid}, {Kind::Ordinary, mid, step.to}};
}

/// Multiplies the step matrices along `steps`, splitting in place any step
/// whose series the tail majorant cannot bound.
BallMatrix path_product(const DiffOperator& L, std::vector<PathStep>& steps, long target, Prec prec,
                        SumAlgorithm algorithm) {
    const auto r = static_cast<std::size_t>(order_of(L));
    BallMatrix m = BallMatrix::identity(r);
    for (std::size_t i = 0; i < steps.size();) {
        const PathStep& step = steps[i];
        try {
            switch (step.kind) {
                case PathStep::Kind::Ordinary:
                    m = mat_mul(step_transition(L, step.from, step.to, target, prec, algorithm), m, prec);
                    break;
                case PathStep::Kind::FromSingular:
                    m = mat_mul(singular_step(L, step.from, step.to, principal_branch(step.from, step.to), target,
                                              prec, algorithm),
                                m, prec);
                    break;
                case PathStep::Kind::ToSingular:
                    m = mat_solve(singular_step(L, step.to, step.from, principal_branch(step.to, step.from), target,
                                                prec, algorithm),
                                  m, prec);
                    break;
            }
            ++i;
        } catch (const StepTooLargeError&) {
            if (steps.size() >= kMaxSteps) throw;
            std::vector<PathStep> parts = split_step(step);
            steps[i] = parts[0];
            steps.insert(steps.begin() + static_cast<std::ptrdiff_t>(i) + 1, parts[1]);
        }
    }
    return m;
}

/// Precision loop shared by the matrix and solution entry points: `eval`
/// maps the path product at a precision to the quantity whose radius is checked.
template <class Result, class Eval>
Result precision_loop(const DiffOperator& L, const std::vector<ExactPoint>& path, const EngineOptions& options,
                      Eval eval, std::size_t* step_count = nullptr) {
    std::vector<PathStep> steps = subdivide(L, path);
    const Prec p0 = eps_bits(options.eps) + 10 * static_cast<Prec>(steps.size()) + 50;
    std::optional<Result> best;
    std::string last_error = "no attempt";
    for (int attempt = 0; attempt <= std::max(options.max_retries, 0); ++attempt) {
        const Prec prec = p0 << attempt;
        try {
            // The truncation target stays put; only the working precision grows,
            // absorbing the radius growth of the recurrences.
            Result res = eval(path_product(L, steps, static_cast<long>(p0), prec, options.algorithm), prec);
            res.prec = prec;
            res.attempts = attempt + 1;
            res.met_eps = radius_le(res.radius, options.eps);
            if (step_count != nullptr) *step_count = steps.size();
            if (res.met_eps) return res;
            best = std::move(res);
        } catch (const PrecisionError& e) {
            last_error = e.what();
        }
    }
    if (best) return *best;
    throw PrecisionError("no certified result within the retry limit: " + last_error);
}

}  // namespace

Float singularity_distance(const DiffOperator& L, const ExactPoint& x) {
    SingularityMap map(L);
    return map.distance(x, L.is_singular_point(x));
}

std::vector<PathStep> subdivide(const DiffOperator& L, const std::vector<ExactPoint>& path) {
    if (path.empty()) throw std::invalid_argument("empty path");
    order_of(L);
    SingularityMap map(L);
    std::vector<bool> singular;
    for (std::size_t i = 0; i < path.size(); ++i) {
        bool sing = L.is_singular_point(path[i]);
        if (sing && i != 0 && i + 1 != path.size())
            throw DomainError("interior path vertex " + path[i].to_string() + " is a singular point");
        if (sing && L.classify(path[i]) == PointKind::Irregular)
            throw DomainError("path endpoint " + path[i].to_string() + " is an irregular singular point");
        singular.push_back(sing);
    }
    std::vector<PathStep> steps;
    ExactPoint cur = path[0];
    bool cur_sing = singular[0];
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const ExactPoint& a = path[i];
        const ExactPoint& b = path[i + 1];
        if (a == b) continue;
        const bool b_sing = singular[i + 1];
        map.check_segment(a, singular[i], b, b_sing);
        const bool real = a.is_real() && b.is_real();
        const Float rho_b = b_sing ? map.distance(b, true) : Float(kMagPrec);
        for (;;) {
            if (steps.size() > kMaxSteps) throw DomainError("path subdivision does not terminate");
            const Float rho = map.distance(cur, cur_sing);
            const Float dist = upper_distance(cur, b);
            const auto kind = cur_sing ? PathStep::Kind::FromSingular : PathStep::Kind::Ordinary;
            if (!b_sing && le_half(dist, rho)) {
                steps.push_back({kind, cur, b});
                cur = b;
                cur_sing = false;
                break;
            }
            if (b_sing && !cur_sing && le_half(dist, rho_b)) {
                steps.push_back({PathStep::Kind::ToSingular, cur, b});
                cur = b;
                cur_sing = true;
                break;
            }
            ExactPoint next = advance(cur, b, rho, real);
            steps.push_back({kind, cur, next});
            cur = next;
            cur_sing = false;
        }
    }
    return steps;
}

BallMatrix step_transition(const DiffOperator& L, const ExactPoint& x0, const ExactPoint& x1, long target_bits,
                           Prec prec, SumAlgorithm algorithm) {
    const auto r = static_cast<std::size_t>(order_of(L));
    if (x0 == x1) return BallMatrix::identity(r);
    if (L.is_singular_point(x0) || L.is_singular_point(x1))
        throw DomainError("step_transition needs ordinary endpoints");
    return basis_jets(L, x0, x1, 0.0, target_bits, prec, algorithm);
}

BallMatrix singular_step(const DiffOperator& L, const ExactPoint& x0, const ExactPoint& x1, double branch,
                         long target_bits, Prec prec, SumAlgorithm algorithm) {
    order_of(L);
    if (x0 == x1) throw DomainError("singular_step needs distinct points");
    if (L.is_singular_point(x1)) throw DomainError("singular_step needs an ordinary evaluation point");
    return basis_jets(L, x0, x1, branch, target_bits, prec, algorithm);
}

TransitionResult numerical_transition_matrix(const DiffOperator& L, const std::vector<ExactPoint>& path,
                                             const EngineOptions& options) {
    std::size_t steps = 0;
    TransitionResult out = precision_loop<TransitionResult>(
        L, path, options,
        [](BallMatrix m, Prec) {
            TransitionResult res;
            res.radius = m.max_rad();
            res.matrix = std::move(m);
            return res;
        },
        &steps);
    out.source = local_basis_monomials(L, path.front());
    out.target = local_basis_monomials(L, path.back());
    out.steps = steps;
    return out;
}

SolutionResult numerical_solution(const DiffOperator& L, const std::vector<ConstantExpr>& ini,
                                  const std::vector<ExactPoint>& path, const EngineOptions& options) {
    if (static_cast<int>(ini.size()) != order_of(L))
        throw std::invalid_argument("expected " + std::to_string(L.order()) + " initial values, got " +
                                    std::to_string(ini.size()));
    return precision_loop<SolutionResult>(L, path, options, [&](const BallMatrix& m, Prec prec) {
        SolutionResult res;
        ComplexBall v;
        for (std::size_t j = 0; j < ini.size(); ++j) v = addmul(v, m(0, j), ini[j].eval_ball(prec), prec);
        res.value = v;
        res.radius = v.max_rad();
        return res;
    });
}

int max_retries_from_env(int fallback) {
    const char* env = std::getenv("HOLOMNUM_MAX_RETRIES");
    if (env == nullptr || *env == '\0') return fallback;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0 || v > 64) return fallback;
    return static_cast<int>(v);
}

}  // namespace holomnum
