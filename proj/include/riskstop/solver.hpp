#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riskstop/model.hpp"

namespace riskstop {

enum class Action : std::uint8_t { Stop = 0, Continue = 1 };

using PolicyTable = std::vector<std::vector<Action>>;  // [t][state], t < T

struct SolveResult {
    // values[t][state] = optimal nested-risk cost-to-go, t = 0..T.
    std::vector<numvec> values;
    // policy[t][state] for t = 0..T-1; the process always stops at T.
    PolicyTable policy;
    // continuation_loss[t][state] = risk of continuing forever optimally
    // minus stopping now; stop exactly when it is >= 0.
    std::vector<numvec> continuation_loss;
    // one_step_loss[t][state] = risk of continuing one period and then
    // stopping, minus stopping now.
    std::vector<numvec> one_step_loss;
};

/// Backward induction for the optimal stopping problem.  Ties between
/// stopping and continuing are resolved by stopping, and the value
/// satisfies values[t] = stop_cost[t] + min(0, continuation_loss[t])
/// bit for bit.
SolveResult solve_dp(const StoppingModel& model);

/// Myopic policy that stops exactly where the one-step loss is >= 0.
PolicyTable one_step_lookahead_policy(const StoppingModel& model);

/// Nested-risk evaluation of a fixed Markov policy; returns the cost
/// tables w[t][state] for t = 0..T with w[T] = terminal stop cost.
std::vector<numvec> evaluate_policy(const StoppingModel& model,
                                    const PolicyTable& policy);

/// For a scalar-state model whose per-period measures are all CVaR (or
/// expectation), build the expectation model with the same costs whose
/// kernel rows are replaced by the least elements of the CVaR envelopes.
/// When the original model has nonincreasing value functions (e.g. a
/// stochastically monotone model with nonincreasing costs) the two models
/// have identical value functions and policies.
StoppingModel risk_neutral_equivalent(const StoppingModel& model);

struct RiskComparisonReport {
    // 0: the first model's risk measures are the more risk-averse ones,
    // 1: the second's, -1: the probes contradict both orderings.
    int more_averse = -1;
    std::size_t probe_trials = 0;
    bool probes_consistent = false;
    // Optimal values of the more risk-averse model dominate the other's.
    bool values_ordered = false;
    double max_value_violation = 0.0;
    // The more risk-averse model's stop region contains the other's at
    // every period.
    bool stop_regions_nested = false;
    std::string note;
};

/// Compare two models that differ only in their risk specifications.
/// The claimed risk-aversion ordering is first established empirically on
/// seeded random (distribution, sample) probes and then verified on the
/// solved value functions and stop regions.
RiskComparisonReport compare_risk_aversion(const StoppingModel& first,
                                           const StoppingModel& second,
                                           std::size_t trials = 200,
                                           std::uint64_t seed = 1);

}  // namespace riskstop
