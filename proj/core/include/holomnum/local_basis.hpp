#pragma once

#include <string>
#include <utility>
#include <vector>

#include "holomnum/diff_operator.hpp"

namespace holomnum {

/// Distinguished monomial (x - x0)^nu log(x - x0)^k / k!.
struct Monomial {
    mpq_class nu;
    int k = 0;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.nu == b.nu && a.k == b.k; }
};

/// Renders e.g. "1/2*log(x)^2", "(x - 1)*log(x - 1)", "sqrt(x - a)". `var` is
/// the text of x - x0 ("x" at the origin).
std::string format_monomial(const Monomial& m, const std::string& var);

/// Indicial roots differing by integers: base + offset for each (offset, multiplicity).
struct ExponentCluster {
    mpq_class base;
    std::vector<std::pair<int, int>> offsets;  // ascending offset

    int multiplicity_at(int offset) const;
    int total_multiplicity() const;
    int max_offset() const { return offsets.back().first; }
};

/// Partition of rational roots (with multiplicities) into integer-spaced
/// clusters; each cluster's base is its smallest root. Clusters are ordered
/// by base.
std::vector<ExponentCluster> group_exponents(const std::vector<std::pair<mpq_class, int>>& roots);

struct LocalBasisStructure {
    /// Canonical order: ascending nu, descending k.
    std::vector<Monomial> monomials;
    std::vector<ExponentCluster> clusters;

    /// Index of the cluster containing the exponent of `m`.
    std::size_t cluster_of(const Monomial& m) const;
};

/// Structure read off a theta form at the origin. Throws UnsupportedError
/// when an indicial root is not rational, DomainError for an irregular point.
LocalBasisStructure local_basis_structure(const ThetaFormRecurrence& t, int order);
LocalBasisStructure local_basis_monomials(const DiffOperator& L, const ExactPoint& x0);

/// Truncated log-series sum_{n<N} sum_k u[n][k] x^(nu+n) log(x)^k / k!.
struct LogSeries {
    mpq_class nu;
    /// Every u[n] has log_order + 1 entries.
    int log_order = 0;
    std::vector<std::vector<FieldElem>> u;

    int size() const { return static_cast<int>(u.size()); }
};

/// The canonical basis solution attached to `label`, expanded at the origin of
/// the theta form `t` to N terms (indices n = 0..N-1 relative to the cluster
/// base). The coefficient of the label's monomial is 1 and those of all other
/// distinguished monomials are 0.
LogSeries expand_local_solution(const ThetaFormRecurrence& t, const ExponentCluster& cluster,
                                const Monomial& label, int N);
LogSeries expand_local_solution(const DiffOperator& L, const ExactPoint& x0, const Monomial& label, int N);

/// Taylor jet of order `jet_order` (value, f', f''/2, ...) in h of
/// (z+h)^nu * sum_k P_k(h) log(z+h)^k/k!, given the jets P_k. Powers and
/// logs use the argument determination closest to `branch`.
std::vector<ComplexBall> assemble_log_jet(const std::vector<std::vector<ComplexBall>>& P, const mpq_class& nu,
                                          const ComplexBall& z, double branch, int jet_order, Prec prec);

/// Jet of the truncated sum of `f` at z, without any tail bound.
std::vector<ComplexBall> evaluate_log_series(const LogSeries& f, const ComplexBall& z, double branch,
                                             int jet_order, Prec prec);

/// Coefficients of q(a + X) as a polynomial in X.
std::vector<FieldElem> taylor_coefficients(const Polynomial& q, const FieldElem& a);

}  // namespace holomnum
