#include "holomnum/local_basis.hpp"

#include <algorithm>
#include <map>

#include "holomnum/error.hpp"

namespace holomnum {

namespace {

std::string exponent_text(const mpq_class& e) {
    if (e.get_den() == 1) return e.get_str();
    return "(" + e.get_str() + ")";
}

std::vector<ComplexBall> mul_trunc(const std::vector<ComplexBall>& a, const std::vector<ComplexBall>& b, int n,
                                   Prec prec) {
    std::vector<ComplexBall> r(static_cast<std::size_t>(n));
    for (int i = 0; i < n && i < static_cast<int>(a.size()); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j < n && j < static_cast<int>(b.size()); ++j) r[i + j] = addmul(r[i + j], a[i], b[j], prec);
    }
    return r;
}

}  // namespace

std::string format_monomial(const Monomial& m, const std::string& var) {
    const bool compound = var.find(' ') != std::string::npos;
    const std::string base = compound ? "(" + var + ")" : var;
    std::vector<std::string> parts;
    if (m.nu != 0) {
        if (m.nu == 1) parts.push_back(base);
        else if (m.nu == mpq_class(1, 2)) parts.push_back("sqrt(" + var + ")");
        else parts.push_back(base + "^" + exponent_text(m.nu));
    }
    if (m.k > 0) {
        std::string lg = "log(" + var + ")";
        if (m.k > 1) lg += "^" + std::to_string(m.k);
        mpz_class fact;
        mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(m.k));
        if (fact != 1) lg = "1/" + fact.get_str() + "*" + lg;
        // Keep the rational factor in front: "1/2*x*log(x)^2".
        if (fact != 1 && !parts.empty()) {
            parts.insert(parts.begin(), "1/" + fact.get_str());
            lg = "log(" + var + ")" + (m.k > 1 ? "^" + std::to_string(m.k) : "");
        }
        parts.push_back(lg);
    }
    if (parts.empty()) return "1";
    if (m.nu == 1 && m.k == 0) return var;
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
    return out;
}

int ExponentCluster::multiplicity_at(int offset) const {
    for (const auto& [o, m] : offsets)
        if (o == offset) return m;
    return 0;
}

int ExponentCluster::total_multiplicity() const {
    int t = 0;
    for (const auto& [o, m] : offsets) t += m;
    return t;
}

std::vector<ExponentCluster> group_exponents(const std::vector<std::pair<mpq_class, int>>& roots) {
    std::vector<std::pair<mpq_class, int>> sorted = roots;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<ExponentCluster> clusters;
    for (const auto& [root, mult] : sorted) {
        ExponentCluster* home = nullptr;
        for (auto& c : clusters) {
            mpq_class diff = root - c.base;
            if (diff.get_den() == 1) {
                home = &c;
                break;
            }
        }
        if (!home) {
            clusters.push_back(ExponentCluster{root, {}});
            home = &clusters.back();
        }
        mpq_class diff = root - home->base;
        int off = static_cast<int>(diff.get_num().get_si());
        bool merged = false;
        for (auto& [o, m] : home->offsets)
            if (o == off) {
                m += mult;
                merged = true;
            }
        if (!merged) home->offsets.emplace_back(off, mult);
    }
    for (auto& c : clusters) std::sort(c.offsets.begin(), c.offsets.end());
    return clusters;
}

std::size_t LocalBasisStructure::cluster_of(const Monomial& m) const {
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        mpq_class diff = m.nu - clusters[i].base;
        if (diff.get_den() == 1 && diff >= 0) return i;
    }
    throw DomainError("monomial does not belong to the local basis");
}

LocalBasisStructure local_basis_structure(const ThetaFormRecurrence& t, int order) {
    const Polynomial& q0 = t.q[0];
    if (q0.degree() != order) throw DomainError("irregular singular point");
    auto roots = rational_roots(q0);
    int total = 0;
    for (const auto& r : roots) total += r.second;
    if (total != q0.degree()) throw UnsupportedError("unsupported exponent: indicial polynomial has non-rational roots");
    LocalBasisStructure s;
    s.clusters = group_exponents(roots);
    for (const auto& c : s.clusters)
        for (const auto& [off, mult] : c.offsets)
            for (int k = mult - 1; k >= 0; --k) s.monomials.push_back(Monomial{c.base + off, k});
    std::stable_sort(s.monomials.begin(), s.monomials.end(), [](const Monomial& a, const Monomial& b) {
        if (a.nu != b.nu) return a.nu < b.nu;
        return a.k > b.k;
    });
    return s;
}

LocalBasisStructure local_basis_monomials(const DiffOperator& L, const ExactPoint& x0) {
    if (L.is_zero()) throw DomainError("zero operator");
    DiffOperator m = x0.is_zero() ? L : L.translate(x0.value());
    return local_basis_structure(m.theta_form(), L.order());
}

std::vector<FieldElem> taylor_coefficients(const Polynomial& q, const FieldElem& a) {
    return q.taylor_shift(a).coeffs();
}

LogSeries expand_local_solution(const ThetaFormRecurrence& t, const ExponentCluster& cluster, const Monomial& label,
                                int N) {
    mpq_class rel = label.nu - cluster.base;
    if (rel.get_den() != 1 || rel < 0) throw DomainError("label outside the exponent cluster");
    const int j0 = static_cast<int>(rel.get_num().get_si());
    if (label.k < 0 || label.k >= cluster.multiplicity_at(j0)) throw DomainError("label is not a distinguished monomial");
    const int K = cluster.total_multiplicity() - 1;
    const int s = t.span();
    LogSeries f;
    f.nu = cluster.base;
    f.log_order = K;
    f.u.assign(static_cast<std::size_t>(N), std::vector<FieldElem>(static_cast<std::size_t>(K + 1)));
    for (int n = 0; n < N; ++n) {
        // rhs = -sum_i q_i(nu + n - i + S) u_{n-i}
        std::vector<FieldElem> rhs(static_cast<std::size_t>(K + 1));
        for (int i = 1; i <= s && i <= n; ++i) {
            if (t.q[i].is_zero()) continue;
            const auto& prev = f.u[n - i];
            bool nonzero = false;
            for (const auto& c : prev) nonzero = nonzero || !c.is_zero();
            if (!nonzero) continue;
            std::vector<FieldElem> b = taylor_coefficients(t.q[i], FieldElem(cluster.base + (n - i)));
            for (int k = 0; k <= K; ++k)
                for (int j = 0; j < static_cast<int>(b.size()) && k + j <= K; ++j) rhs[k] -= b[j] * prev[k + j];
        }
        // q_0(nu + n + X) = X^m h(X)
        std::vector<FieldElem> a = taylor_coefficients(t.q[0], FieldElem(cluster.base + n));
        const int m = cluster.multiplicity_at(n);
        for (int j = 0; j < m; ++j)
            if (!a[j].is_zero()) throw Error("internal: indicial multiplicity mismatch");
        std::vector<FieldElem> h(a.begin() + m, a.end());
        // Solve h(S) u = T^m rhs from the top log index down.
        std::vector<FieldElem>& u = f.u[n];
        FieldElem h0inv = h[0].inverse();
        for (int k = K; k >= 0; --k) {
            FieldElem v = k - m >= 0 ? rhs[k - m] : FieldElem();
            for (int j = 1; j < static_cast<int>(h.size()) && k + j <= K; ++j) v -= h[j] * u[k + j];
            u[k] = v * h0inv;
        }
        for (int k = 0; k < m; ++k) u[k] = (n == j0 && k == label.k) ? FieldElem(1) : FieldElem();
    }
    return f;
}

LogSeries expand_local_solution(const DiffOperator& L, const ExactPoint& x0, const Monomial& label, int N) {
    DiffOperator m = x0.is_zero() ? L : L.translate(x0.value());
    ThetaFormRecurrence t = m.theta_form();
    LocalBasisStructure s = local_basis_structure(t, L.order());
    return expand_local_solution(t, s.clusters[s.cluster_of(label)], label, N);
}

std::vector<ComplexBall> assemble_log_jet(const std::vector<std::vector<ComplexBall>>& P, const mpq_class& nu,
                                          const ComplexBall& z, double branch, int jet_order, Prec prec) {
    const int r = jet_order;
    int K = static_cast<int>(P.size()) - 1;
    while (K > 0) {
        bool zero = true;
        for (const auto& c : P[K]) zero = zero && c.is_zero();
        if (!zero) break;
        --K;
    }
    std::vector<ComplexBall> sum(static_cast<std::size_t>(r));
    for (int j = 0; j < r && j < static_cast<int>(P[0].size()); ++j) sum[j] = P[0][j];
    if (K > 0) {
        // log(z + h) = log z + sum_{m>=1} (-1)^(m+1) (h/z)^m / m
        ComplexBall zinv = inv(z, prec);
        std::vector<ComplexBall> lg(static_cast<std::size_t>(r));
        lg[0] = log(z, branch, prec);
        ComplexBall zp(1);
        for (int m = 1; m < r; ++m) {
            zp = mul(zp, zinv, prec);
            lg[m] = div_si(zp, m % 2 ? m : -m, prec);
        }
        std::vector<ComplexBall> lpow(static_cast<std::size_t>(r));
        lpow[0] = ComplexBall(1);
        for (int k = 1; k <= K; ++k) {
            lpow = mul_trunc(lpow, lg, r, prec);
            for (auto& c : lpow) c = div_si(c, k, prec);
            std::vector<ComplexBall> term = mul_trunc(P[k], lpow, r, prec);
            for (int j = 0; j < r; ++j) sum[j] = add(sum[j], term[j], prec);
        }
    }
    if (nu == 0) return sum;
    // (z + h)^nu = z^nu sum_m binom(nu, m) (h/z)^m
    ComplexBall zinv = inv(z, prec);
    std::vector<ComplexBall> pw(static_cast<std::size_t>(r));
    pw[0] = pow_rational(z, nu, branch, prec);
    // pw[m] = z^nu * binom(nu, m) * z^-m
    ComplexBall zpow = pw[0];
    mpq_class binom = 1;
    for (int m = 1; m < r; ++m) {
        binom = binom * (nu - (m - 1)) / m;
        zpow = mul(zpow, zinv, prec);
        pw[m] = mul(zpow, ComplexBall(RealBall::from_mpq(binom, prec)), prec);
    }
    return mul_trunc(pw, sum, r, prec);
}

std::vector<ComplexBall> evaluate_log_series(const LogSeries& f, const ComplexBall& z, double branch, int jet_order,
                                             Prec prec) {
    const int r = jet_order;
    std::vector<std::vector<ComplexBall>> P(static_cast<std::size_t>(f.log_order + 1),
                                            std::vector<ComplexBall>(static_cast<std::size_t>(r)));
    // wpow = (z + h)^n mod h^r
    std::vector<ComplexBall> wpow(static_cast<std::size_t>(r));
    wpow[0] = ComplexBall(1);
    for (int n = 0; n < f.size(); ++n) {
        for (int k = 0; k <= f.log_order; ++k) {
            const FieldElem& c = f.u[n][k];
            if (c.is_zero()) continue;
            ComplexBall cb = c.to_ball(prec);
            for (int j = 0; j < r; ++j) P[k][j] = addmul(P[k][j], cb, wpow[j], prec);
        }
        for (int j = r - 1; j >= 0; --j) wpow[j] = add(mul(wpow[j], z, prec), j > 0 ? wpow[j - 1] : ComplexBall(), prec);
    }
    return assemble_log_jet(P, f.nu, z, branch, jet_order, prec);
}

}  // namespace holomnum
