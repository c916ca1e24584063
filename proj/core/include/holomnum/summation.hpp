#pragma once

#include <optional>
#include <vector>

#include "holomnum/local_basis.hpp"

namespace holomnum {

enum class SumAlgorithm { Auto, Naive, BinarySplitting };

/// Summation of the canonical basis solutions of one exponent cluster of a
/// theta-form recurrence (expanded at the origin) at a nearby point z.
struct SummationPlan {
    ThetaFormRecurrence rec;
    ExponentCluster cluster;
    /// Basis elements to sum (all in `cluster`); one result jet each.
    std::vector<Monomial> labels;
    /// Evaluation point relative to the expansion point.
    FieldElem z;
    /// Argument determination for log and non-integer powers of z.
    double branch = 0;
    /// Number of jet coefficients (value, f', f''/2, ...).
    int jet_order = 1;
    /// The truncation error of every jet coefficient is made <= 2^-target_bits.
    long target_bits = 64;
    Prec prec = 64;
    SumAlgorithm algorithm = SumAlgorithm::Auto;
};

struct SummationResult {
    /// jets[i][j]: coefficient of h^j in the expansion of basis element i at z + h.
    std::vector<std::vector<ComplexBall>> jets;
    /// Number of series terms summed.
    long terms = 0;
    /// Largest tail bound that was added.
    Float tail{kMagPrec};
    SumAlgorithm used = SumAlgorithm::Naive;
};

/// Ball-arithmetic iteration of the recurrence; stops once a certified tail
/// bound meets the target. Throws PrecisionError when no bound can be found.
SummationResult sum_naive(const SummationPlan& plan);
/// Exact divide-and-conquer product over the ring of integers of the step
/// field, converted to balls once. Throws UnsupportedError when the field's
/// defining polynomial is not integral (callers then use sum_naive).
SummationResult sum_binary_splitting(const SummationPlan& plan);
/// Dispatches on plan.algorithm; Auto picks binary splitting above 256 * D
/// bits (D = span * cluster multiplicity) when z admits exact integral
/// arithmetic, and naive summation otherwise.
SummationResult sum_series(const SummationPlan& plan);

/// Interval majorant of a log-free-after-n_min recurrence:
/// u_n = -q_0(nu+n+S)^-1 sum_i q_i(nu+n-i+S) u_{n-i} for all n >= n_min,
/// packaged as an interval companion matrix whose powers bound the growth of
/// the coefficient sequence.
class TailMajorant {
public:
    TailMajorant(const ThetaFormRecurrence& rec, const mpq_class& nu, int log_order, long n_min);

    /// False when q_0(nu + n) may vanish for some n >= n_min.
    bool valid() const { return valid_; }
    long n_min() const { return n_min_; }

    /// Upper bounds B_j (j < jet_order) on
    ///   sum_{n >= n_min} max_k |u_{n,k}| * binom(n, j) * t^(n-j),
    /// given upper bounds last[i] >= max_k |u_{n_min-1-i,k}| for i < span.
    /// Empty when no radius of the search grid validates the induction.
    std::optional<std::vector<Float>> bound(const std::vector<Float>& last, const Float& t, int jet_order) const {
        return bound(last, t, jet_order, n_min_);
    }
    /// Same, for the tail from index `from` >= n_min (the majorant stays valid
    /// for every later start), with last[i] bounding the terms from-1-i.
    std::optional<std::vector<Float>> bound(const std::vector<Float>& last, const Float& t, int jet_order,
                                            long from) const;

private:
    bool valid_ = false;
    long n_min_ = 0;
    int span_ = 0;
    int block_ = 1;
    // powers_[b] is the interval matrix C^(2^b) (dimension span_ * block_).
    std::vector<std::vector<ComplexBall>> powers_;
};

/// Tail bound for the series after its terms 0..N (see TailMajorant::bound).
/// Whether the majorant over n >= n_max can bound the tail at |z| <= t;
/// false means no truncation order up to n_max will validate.
bool tail_bound_feasible(const ThetaFormRecurrence& rec, const mpq_class& nu, int log_order, long n_max,
                         const Float& t, int jet_order);

std::optional<std::vector<Float>> tail_bound(const ThetaFormRecurrence& rec, const mpq_class& nu, int log_order,
                                             long N, const std::vector<Float>& last, const Float& t, int jet_order);

}  // namespace holomnum
