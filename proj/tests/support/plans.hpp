#pragma once

// Builds summation plans for the canonical basis of an operator at a point,
// the way the path engine does, so tests can drive the summation directly.

#include <vector>

#include "cli.hpp"
#include "holomnum/summation.hpp"

namespace holomnum::testing {

/// One plan per exponent cluster of L at x0, evaluated at x1.
inline std::vector<SummationPlan> basis_plans(const DiffOperator& L, const ExactPoint& x0, const ExactPoint& x1,
                                              long target_bits, Prec prec, SumAlgorithm algorithm) {
    ThetaFormRecurrence t = L.translate(x0.value()).theta_form();
    LocalBasisStructure s = local_basis_structure(t, L.order());
    std::vector<SummationPlan> plans;
    for (std::size_t c = 0; c < s.clusters.size(); ++c) {
        SummationPlan plan;
        plan.rec = t;
        plan.cluster = s.clusters[c];
        for (const auto& m : s.monomials)
            if (s.cluster_of(m) == c) plan.labels.push_back(m);
        plan.z = x1.value() - x0.value();
        plan.jet_order = L.order();
        plan.target_bits = target_bits;
        plan.prec = prec;
        plan.algorithm = algorithm;
        plans.push_back(std::move(plan));
    }
    return plans;
}

inline SummationPlan single_plan(const char* op, const mpq_class& z, long bits, SumAlgorithm algorithm,
                                 int jet_order = 1) {
    DiffOperator L = cli::parse_operator(op);
    auto plans = basis_plans(L, ExactPoint::rational(0), ExactPoint::rational(z), bits, bits + 32, algorithm);
    SummationPlan p = plans.front();
    p.jet_order = jet_order;
    return p;
}

}  // namespace holomnum::testing
