#pragma once

#include <string>

#include "riskstop/common.hpp"
#include "riskstop/distribution.hpp"

namespace riskstop {

/// A sample of real values aligned index-by-index with the outcomes of a
/// FiniteDistribution. Values are costs: larger is worse.
using ValuedSample = numvec;

enum class RiskKind {
    Expectation,
    CVaR,
    MeanCVaR,
    MeanSemideviation,
};

std::string to_string(RiskKind kind);

/// One-step risk measure specification. All four kinds are coherent
/// (monotone, translation-invariant, positively homogeneous, convex) and
/// law-invariant; Expectation, CVaR and MeanCVaR are additionally additive
/// on comonotone pairs, MeanSemideviation is not.
///
/// Parameters by kind:
///  - CVaR:              alpha, the tail level in (0, 1]. alpha = 1 is the
///                       mean; smaller alpha averages a thinner worst tail
///                       of the cost distribution.
///  - MeanCVaR:          kappa in [0, 1] mixes the mean with CVaR at tail
///                       level gamma in (0, 1]:
///                       (1 - kappa) E[Z] + kappa CVaR_gamma(Z).
///  - MeanSemideviation: E[Z] + kappa E[(Z - E[Z])+], kappa in [0, 1].
struct RiskSpec {
    RiskKind kind = RiskKind::Expectation;
    double alpha = 1.0;
    double kappa = 0.0;
    double gamma = 1.0;

    static RiskSpec expectation();
    static RiskSpec cvar(double alpha);
    static RiskSpec mean_cvar(double kappa, double gamma);
    static RiskSpec mean_semideviation(double kappa);

    void validate() const;

    /// Structural recognition of comonotone additivity: true for
    /// Expectation, CVaR, MeanCVaR (mixtures of spectral measures), false
    /// for MeanSemideviation. axiom_probe backs this classification with
    /// randomized evidence.
    bool comonotone_additive() const {
        return kind != RiskKind::MeanSemideviation;
    }

    bool operator==(const RiskSpec& o) const {
        return kind == o.kind && alpha == o.alpha && kappa == o.kappa &&
               gamma == o.gamma;
    }
    bool operator!=(const RiskSpec& o) const { return !(*this == o); }

    std::string describe() const;
};

/// Evaluate the risk of a cost sample under the given distribution.
/// Deterministic and invariant under joint permutations of
/// (weights, values): internally the atoms are processed in a canonical
/// order, so two inputs describing the same law give bit-identical results.
double evaluate_risk(const RiskSpec& spec, const FiniteDistribution& dist,
                     const ValuedSample& values);

/// Conditional value-at-risk of the cost sample at tail level alpha:
/// the mean of the worst (largest-value) alpha-tail, splitting the
/// boundary atom fractionally. cvar(..., 1) is the plain mean; a point
/// mass returns its value for every alpha.
double cvar(const FiniteDistribution& dist, const ValuedSample& values,
            double alpha);

/// Independent cross-check of cvar(): minimizes the Rockafellar-Uryasev
/// objective  u + E[(Z - u)+] / alpha  over u in the support values, where
/// the infimum is attained. Shares no code with the tail-splitting
/// implementation; the two must agree to 1e-12.
double cvar_oracle(const FiniteDistribution& dist, const ValuedSample& values,
                   double alpha);

/// Maximizer of <values, P> over the CVaR dual envelope
/// { P << dist : dP/dQ <= 1/alpha }: assigns relative density 1/alpha to
/// outcomes in decreasing value order until the mass budget 1 is used,
/// splitting the boundary atom. Equal values are taken in ascending index
/// order; the attained objective does not depend on that tie-break. As a
/// documented special case, a constant sample returns `dist` unchanged
/// (every feasible point is then optimal). alpha = 1 also returns `dist`.
FiniteDistribution envelope_maximize(const FiniteDistribution& dist,
                                     const ValuedSample& values, double alpha);

/// Least element of the CVaR envelope with respect to first-order
/// stochastic dominance on a totally ordered scalar state space: truncate
/// `dist` to its lower alpha-tail in state order and renormalize. For any
/// cost sample that is decreasing in the state, the expectation under the
/// returned distribution equals cvar() of that sample. `state_values`
/// must be strictly increasing (scalar grid coordinates); richer partial
/// orders are rejected upstream because the construction needs a total
/// order.
FiniteDistribution cvar_minimal_element(const FiniteDistribution& dist,
                                        const numvec& state_values,
                                        double alpha);

}  // namespace riskstop
