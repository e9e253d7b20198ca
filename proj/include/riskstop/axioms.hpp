#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riskstop/risk.hpp"

namespace riskstop {

/// Concrete counterexample found by the probe: a distribution plus one or
/// two samples, with both sides of the violated inequality. Tests replay
/// witnesses by re-evaluating the measure on the stored data.
struct AxiomWitness {
    numvec weights;
    numvec x;
    numvec y;  // empty for single-sample properties
    double lhs = 0.0;
    double rhs = 0.0;
};

struct AxiomCheck {
    std::string property;
    bool passed = true;
    std::optional<AxiomWitness> witness;
};

struct AxiomProbeReport {
    RiskSpec spec;
    int trials = 0;
    std::vector<AxiomCheck> checks;

    bool all_passed() const;
    const AxiomCheck* find(const std::string& property) const;
};

/// Randomized audit of the coherence axioms on seeded random distributions
/// and samples: monotonicity, translation invariance, positive
/// homogeneity, convexity, and comonotone additivity. The first four hold
/// for every supported measure; comonotone additivity holds for
/// Expectation, CVaR and MeanCVaR and fails for MeanSemideviation, where
/// the probe searches for (and normally finds) an explicit witness.
AxiomProbeReport axiom_probe(const RiskSpec& spec, int trials,
                             std::uint64_t seed);

}  // namespace riskstop
