#pragma once

// Operators used across the benchmark suites, built directly from rational
// coefficient lists (index i of each inner list is the coefficient of x^i).

#include <gmpxx.h>

#include <vector>

#include "holomnum/diff_operator.hpp"

namespace holomnum::bench {

inline DiffOperator make_operator(const std::vector<std::vector<long>>& coeffs) {
    std::vector<Polynomial> p;
    for (const auto& c : coeffs) {
        std::vector<mpq_class> q(c.begin(), c.end());
        p.push_back(Polynomial::from_rationals(q));
    }
    return DiffOperator(std::move(p));
}

/// Dx - 1
inline DiffOperator exponential() { return make_operator({{-1}, {1}}); }

/// Dx^2 - x
inline DiffOperator airy() { return make_operator({{0, -1}, {}, {1}}); }

/// x*Dx^2 + Dx - x
inline DiffOperator bessel_k0() { return make_operator({{0, -1}, {1}, {0, 1}}); }

/// x^2*(x^2-34*x+1)*Dx^4 + 5*x*(2*x^2-51*x+1)*Dx^3 + (25*x^2-418*x+4)*Dx^2 + (15*x-117)*Dx + 1
inline DiffOperator apery() {
    return make_operator({{1}, {-117, 15}, {4, -418, 25}, {0, 5, -255, 10}, {0, 0, 1, -34, 1}});
}

}  // namespace holomnum::bench
