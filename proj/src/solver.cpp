#include "riskstop/solver.hpp"

#include <algorithm>
#include <cmath>

namespace riskstop {

SolveResult solve_dp(const StoppingModel& model) {
    model.validate();
    const auto steps = static_cast<std::size_t>(model.horizon);
    const std::size_t states = model.grid.size();

    SolveResult result;
    result.values.assign(steps + 1, numvec(states));
    result.policy.assign(steps, std::vector<Action>(states, Action::Stop));
    result.continuation_loss.assign(steps, numvec(states));
    result.one_step_loss.assign(steps, numvec(states));

    result.values[steps] = model.stop_cost(static_cast<int>(steps));
    for (std::size_t t = steps; t-- > 0;) {
        const numvec& stop = model.stop_cost(static_cast<int>(t));
        const numvec& cont = model.continue_cost(static_cast<int>(t));
        const numvec& next_stop = model.stop_cost(static_cast<int>(t) + 1);
        const RiskSpec& risk = model.risk[t];
        for (std::size_t s = 0; s < states; ++s) {
            const FiniteDistribution& row = model.kernel.row(t, s);
            const double continue_value =
                cont[s] + evaluate_risk(risk, row, result.values[t + 1]);
            const double loss = continue_value - stop[s];
            result.continuation_loss[t][s] = loss;
            result.one_step_loss[t][s] =
                cont[s] + evaluate_risk(risk, row, next_stop) - stop[s];
            result.policy[t][s] = loss >= 0.0 ? Action::Stop
                                              : Action::Continue;
            result.values[t][s] = stop[s] + std::min(0.0, loss);
        }
    }
    return result;
}

PolicyTable one_step_lookahead_policy(const StoppingModel& model) {
    model.validate();
    const auto steps = static_cast<std::size_t>(model.horizon);
    const std::size_t states = model.grid.size();
    PolicyTable policy(steps, std::vector<Action>(states, Action::Stop));
    for (std::size_t t = 0; t < steps; ++t) {
        const numvec& stop = model.stop_cost(static_cast<int>(t));
        const numvec& cont = model.continue_cost(static_cast<int>(t));
        const numvec& next_stop = model.stop_cost(static_cast<int>(t) + 1);
        for (std::size_t s = 0; s < states; ++s) {
            const double one_step =
                cont[s] +
                evaluate_risk(model.risk[t], model.kernel.row(t, s),
                              next_stop) -
                stop[s];
            policy[t][s] = one_step >= 0.0 ? Action::Stop : Action::Continue;
        }
    }
    return policy;
}

std::vector<numvec> evaluate_policy(const StoppingModel& model,
                                    const PolicyTable& policy) {
    model.validate();
    const auto steps = static_cast<std::size_t>(model.horizon);
    const std::size_t states = model.grid.size();
    detail::require(policy.size() == steps,
                    "evaluate_policy: policy has wrong horizon");
    for (const auto& table : policy)
        detail::require(table.size() == states,
                        "evaluate_policy: policy table size mismatch");

    std::vector<numvec> cost(steps + 1, numvec(states));
    cost[steps] = model.stop_cost(static_cast<int>(steps));
    for (std::size_t t = steps; t-- > 0;) {
        const numvec& stop = model.stop_cost(static_cast<int>(t));
        const numvec& cont = model.continue_cost(static_cast<int>(t));
        for (std::size_t s = 0; s < states; ++s) {
            if (policy[t][s] == Action::Stop) {
                cost[t][s] = stop[s];
            } else {
                cost[t][s] = cont[s] + evaluate_risk(model.risk[t],
                                                     model.kernel.row(t, s),
                                                     cost[t + 1]);
            }
        }
    }
    return cost;
}

StoppingModel risk_neutral_equivalent(const StoppingModel& model) {
    model.validate();
    detail::require(model.grid.dims() == 1,
                    "risk_neutral_equivalent: scalar state space required");
    const auto steps = static_cast<std::size_t>(model.horizon);
    const numvec& axis = model.grid.axis(0);

    std::vector<std::vector<numvec>> tables(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        const RiskSpec& spec = model.risk[t];
        detail::require(spec.kind == RiskKind::CVaR ||
                            spec.kind == RiskKind::Expectation,
                        "risk_neutral_equivalent: only CVaR/expectation "
                        "periods admit a least envelope element");
        const double alpha = spec.kind == RiskKind::CVaR ? spec.alpha : 1.0;
        tables[t].reserve(model.grid.size());
        for (std::size_t s = 0; s < model.grid.size(); ++s) {
            const FiniteDistribution least =
                cvar_minimal_element(model.kernel.row(t, s), axis, alpha);
            tables[t].push_back(least.weights());
        }
    }

    StoppingModel neutral;
    neutral.horizon = model.horizon;
    neutral.grid = model.grid;
    neutral.kernel = build_tabular_kernel(model.grid, tables);
    neutral.costs = model.costs;
    neutral.risk.assign(steps, RiskSpec::expectation());
    neutral.validate();
    return neutral;
}

RiskComparisonReport compare_risk_aversion(const StoppingModel& first,
                                           const StoppingModel& second,
                                           std::size_t trials,
                                           std::uint64_t seed) {
    first.validate();
    second.validate();
    detail::require(first.horizon == second.horizon &&
                        first.grid.size() == second.grid.size() &&
                        first.kernel == second.kernel &&
                        first.costs == second.costs,
                    "compare_risk_aversion: models must agree except for "
                    "their risk specifications");

    RiskComparisonReport report;
    report.probe_trials = trials;
    constexpr double kTol = 1e-10;

    // Establish the direction on random probes: draw a distribution and a
    // cost sample, evaluate every period's pair of measures.
    Rng rng(seed);
    bool first_ge = true;   // first >= second on every probe so far
    bool second_ge = true;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + rng.uniform_index(6);
        numvec weights(n), values(n);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            weights[i] = rng.uniform(0.01, 1.0);
            sum += weights[i];
            values[i] = rng.uniform(-5.0, 5.0);
        }
        for (double& w : weights) w /= sum;
        const FiniteDistribution dist(weights);
        for (std::size_t t = 0; t < first.risk.size(); ++t) {
            const double ra = evaluate_risk(first.risk[t], dist, values);
            const double rb = evaluate_risk(second.risk[t], dist, values);
            if (ra < rb - kTol) first_ge = false;
            if (rb < ra - kTol) second_ge = false;
        }
        if (!first_ge && !second_ge) break;
    }
    report.probes_consistent = first_ge || second_ge;
    if (!report.probes_consistent) {
        report.more_averse = -1;
        report.note = "probes found no consistent risk-aversion ordering";
        return report;
    }
    report.more_averse = first_ge ? 0 : 1;
    if (first_ge && second_ge)
        report.note = "risk measures indistinguishable on probes";

    const SolveResult sa = solve_dp(first);
    const SolveResult sb = solve_dp(second);
    const SolveResult& high = report.more_averse == 0 ? sa : sb;
    const SolveResult& low = report.more_averse == 0 ? sb : sa;

    report.values_ordered = true;
    for (std::size_t t = 0; t < high.values.size(); ++t)
        for (std::size_t s = 0; s < high.values[t].size(); ++s) {
            const double gap = low.values[t][s] - high.values[t][s];
            if (gap > kTol) {
                report.values_ordered = false;
                report.max_value_violation =
                    std::max(report.max_value_violation, gap);
            }
        }

    report.stop_regions_nested = true;
    for (std::size_t t = 0; t < high.policy.size(); ++t)
        for (std::size_t s = 0; s < high.policy[t].size(); ++s) {
            if (low.policy[t][s] == Action::Stop &&
                high.policy[t][s] == Action::Continue &&
                high.continuation_loss[t][s] < -kTol)
                report.stop_regions_nested = false;
        }
    return report;
}

}  // namespace riskstop
