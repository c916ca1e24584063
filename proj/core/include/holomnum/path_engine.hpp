#pragma once

// Analytic continuation of solutions of a differential operator along a
// polygonal path, as products of certified step transition matrices.
//
// A transition matrix maps coordinates in the canonical local basis at the
// start of a path to coordinates in the canonical local basis at its end. At
// an ordinary point the coordinates of f are (f, f', f''/2!, ...); at a
// regular singular point they are the coefficients of the distinguished
// monomials (x - x0)^nu log(x - x0)^k / k!, in canonical order.

#include <cstddef>
#include <optional>
#include <vector>

#include "holomnum/ball_matrix.hpp"
#include "holomnum/constant_expr.hpp"
#include "holomnum/local_basis.hpp"
#include "holomnum/summation.hpp"

namespace holomnum {

/// One step of a subdivided path. Ordinary steps expand at `from` and
/// evaluate at `to`; a step out of a singular point expands at the singular
/// point; a step into a singular endpoint expands at `to` (the singular point)
/// and is inverted.
struct PathStep {
    enum class Kind { Ordinary, FromSingular, ToSingular };
    Kind kind = Kind::Ordinary;
    ExactPoint from;
    ExactPoint to;
};

/// Working points of `path` such that every step stays within half the
/// certified distance from its expansion point to the nearest other
/// singularity. Intermediate points are dyadic (Gaussian) rationals close to
/// the user's segments. Throws DomainError when a segment meets a singular
/// point, an interior vertex is singular, or an endpoint is irregular.
std::vector<PathStep> subdivide(const DiffOperator& L, const std::vector<ExactPoint>& path);

/// Certified lower bound on the distance from x to the nearest singular point
/// of L other than x itself; +inf when there is none.
Float singularity_distance(const DiffOperator& L, const ExactPoint& x);

/// Transition matrix between the canonical bases at the ordinary points x0
/// and x1 (column j: jet at x1 of the basis solution with f^(i)(x0)/i! = delta_ij).
/// Truncation errors are made <= 2^-target_bits.
BallMatrix step_transition(const DiffOperator& L, const ExactPoint& x0, const ExactPoint& x1, long target_bits,
                           Prec prec, SumAlgorithm algorithm = SumAlgorithm::Auto);

/// Jets at the ordinary point x1 of the canonical local basis at the regular
/// singular point x0. Logs and powers of x1 - x0 use the argument
/// determination closest to `branch`.
BallMatrix singular_step(const DiffOperator& L, const ExactPoint& x0, const ExactPoint& x1, double branch,
                         long target_bits, Prec prec, SumAlgorithm algorithm = SumAlgorithm::Auto);

struct EngineOptions {
    /// Requested accuracy (entry radius); an indication, not a guarantee.
    mpq_class eps{1, 10000000000000000L};
    /// Number of precision doublings after the first attempt.
    int max_retries = 8;
    SumAlgorithm algorithm = SumAlgorithm::Auto;
};

struct TransitionResult {
    BallMatrix matrix;
    LocalBasisStructure source;
    LocalBasisStructure target;
    /// Largest entry radius.
    Float radius{kMagPrec};
    /// False when the radius still exceeds eps after the last retry.
    bool met_eps = true;
    Prec prec = 0;
    int attempts = 0;
    std::size_t steps = 0;
};

/// Product of the step matrices along `path` with the precision loop:
/// start at ceil(-log2 eps) + 10 * steps + 50 bits and double until every
/// entry radius is <= eps or the retries are exhausted. Throws PrecisionError
/// when no attempt produced a certified result.
TransitionResult numerical_transition_matrix(const DiffOperator& L, const std::vector<ExactPoint>& path,
                                             const EngineOptions& options = {});

struct SolutionResult {
    ComplexBall value;
    Float radius{kMagPrec};
    bool met_eps = true;
    Prec prec = 0;
    int attempts = 0;
};

/// First coordinate of T * ini in the canonical basis at the end of the path:
/// the value f(end) at an ordinary endpoint, the coefficient of the first
/// canonical monomial at a singular one.
SolutionResult numerical_solution(const DiffOperator& L, const std::vector<ConstantExpr>& ini,
                                  const std::vector<ExactPoint>& path, const EngineOptions& options = {});

/// max_retries from the environment variable HOLOMNUM_MAX_RETRIES, when set to
/// a nonnegative integer; `fallback` otherwise.
int max_retries_from_env(int fallback = 8);

}  // namespace holomnum
