#include <doctest.h>

#include "cli.hpp"
#include "holomnum/local_basis.hpp"

using namespace holomnum;

namespace {

/// Applies sum_k x^k q_k(theta) to a truncated log-series, using
/// theta (x^e log^k / k!) = e x^e log^k / k! + x^e log^(k-1) / (k-1)!, and
/// returns the coefficient vectors of x^(nu + n) for n < size.
std::vector<std::vector<FieldElem>> theta_residual(const ThetaFormRecurrence& t, const LogSeries& f) {
    const int K = f.log_order;
    std::vector<std::vector<FieldElem>> out(static_cast<std::size_t>(f.size()),
                                            std::vector<FieldElem>(static_cast<std::size_t>(K + 1)));
    for (int n = 0; n < f.size(); ++n) {
        const FieldElem e = FieldElem(mpq_class(f.nu + n));
        for (int k = 0; k <= t.span(); ++k) {
            if (n + k >= f.size() || t.q[k].is_zero()) continue;
            // Horner: q(theta) c
            std::vector<FieldElem> acc(static_cast<std::size_t>(K + 1));
            const auto& co = t.q[k].coeffs();
            for (std::size_t d = co.size(); d-- > 0;) {
                std::vector<FieldElem> next(static_cast<std::size_t>(K + 1));
                for (int j = 0; j <= K; ++j) {
                    next[j] = e * acc[j] + (j < K ? acc[j + 1] : FieldElem(0));
                    next[j] += co[d] * f.u[n][j];
                }
                acc = std::move(next);
            }
            for (int j = 0; j <= K; ++j) out[n + k][j] += acc[j];
        }
    }
    return out;
}

}  // namespace

TEST_SUITE("property") {
    TEST_CASE("local basis expansions have exactly zero residual below the truncation order") {
        struct Case {
            const char* op;
            const char* point;
        };
        const Case cases[] = {
            {"x*Dx^2 + Dx - x", "0"},
            {"x*Dx^2 + Dx", "1"},
            {"4*x^2*Dx^2 + 4*x*Dx - 1 + x", "0"},
            {"x^2*Dx^2 + x*Dx - x^2", "0"},
            {"x*(x - 1)*Dx^2 + (3*x - 1)*Dx + 1/4", "1"},
            {"x^2*(x^2 - 34*x + 1)*Dx^4 + 5*x*(2*x^2 - 51*x + 1)*Dx^3 + (25*x^2 - 418*x + 4)*Dx^2 + (15*x - 117)*Dx + 1", "0"},
            {"x^2*(x^2 - 34*x + 1)*Dx^4 + 5*x*(2*x^2 - 51*x + 1)*Dx^3 + (25*x^2 - 418*x + 4)*Dx^2 + (15*x - 117)*Dx + 1",
             "alg(x^2 - 34*x + 1; 0, 1/10, 0, 0)"},
            {"(x*Dx)^4 - x*(65*(x*Dx)^4+130*(x*Dx)^3+105*(x*Dx)^2+40*x*Dx+6) + 4*x^2*(4*x*Dx+3)*(x*Dx+1)^2*(4*x*Dx+5)", "0"},
            {"x^2*Dx^2 - x*Dx + 1 - x", "0"},
            {"x^2*Dx^2 + x*Dx - 4 + x", "0"},
        };
        for (const auto& c : cases) {
            CAPTURE(c.op);
            CAPTURE(c.point);
            DiffOperator L = cli::parse_operator(c.op);
            ExactPoint p = cli::parse_point(c.point);
            ThetaFormRecurrence t = L.translate(p.value()).theta_form();
            LocalBasisStructure s = local_basis_structure(t, L.order());
            for (const auto& m : s.monomials) {
                for (int N : {1, 3, 8, 15}) {
                    const ExponentCluster& cl = s.clusters[s.cluster_of(m)];
                    LogSeries f = expand_local_solution(t, cl, m, N);
                    REQUIRE(f.size() == N);
                    auto res = theta_residual(t, f);
                    for (int n = 0; n < N; ++n)
                        for (const auto& v : res[static_cast<std::size_t>(n)]) CHECK(v.is_zero());
                    // The label's own monomial has coefficient 1, the other
                    // distinguished monomials of the cluster 0.
                    const int off = static_cast<int>(mpq_class(m.nu - f.nu).get_num().get_si());
                    if (off < N) CHECK(f.u[off][m.k] == FieldElem(1));
                }
            }
        }
    }
}
