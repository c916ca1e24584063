#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "holomnum/polynomial.hpp"

namespace holomnum {

/// Certified enclosure of one complex root.
struct RootEnclosure {
    ComplexBall ball;
    /// The root is proven real; `ball.im()` is then exactly zero.
    bool real = false;
};

/// Approximations (not certified) of the roots of a square-free polynomial,
/// by Aberth iteration at `prec` bits.
std::vector<ComplexBall> approximate_roots(const Polynomial& p, Prec prec);

/// Pairwise-disjoint enclosures, one per distinct root of `p`, each with
/// radius about 2^-prec relative to its magnitude. Multiplicities are
/// discarded (the square-free part is isolated). Certification uses
/// Weierstrass inclusion discs D(z_i, d |W_i|). Throws PrecisionError if
/// separation cannot be certified.
std::vector<RootEnclosure> isolate_roots(const Polynomial& p, Prec prec);

}  // namespace holomnum

namespace holomnum {

/// The simplest rational in the ball (by continued-fraction convergents of
/// the midpoint, denominators up to 2^max_den_bits), if any. The result is a
/// candidate only; callers verify it exactly.
std::optional<mpq_class> simplest_rational_in(const RealBall& b, int max_den_bits = 64);

/// Exact rational roots of `p` with their multiplicities, found by numeric
/// isolation and exact verification.
std::vector<std::pair<mpq_class, int>> rational_roots(const Polynomial& p);

}  // namespace holomnum
