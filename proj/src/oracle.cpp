#include "riskstop/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "riskstop/risk.hpp"

namespace riskstop {

namespace {

void require_within(const StoppingModel& model,
                    const EnumerationBudget& budget, bool count_policies) {
    model.validate();
    if (model.grid.size() > budget.max_states)
        throw std::invalid_argument(
            "oracle: instance has " + std::to_string(model.grid.size()) +
            " states, budget allows " + std::to_string(budget.max_states));
    if (model.horizon > budget.max_horizon)
        throw std::invalid_argument(
            "oracle: horizon " + std::to_string(model.horizon) +
            " exceeds budget " + std::to_string(budget.max_horizon));
    if (!count_policies) return;
    const std::size_t bits =
        static_cast<std::size_t>(model.horizon) * model.grid.size();
    if (bits >= 63 || (std::size_t{1} << bits) > budget.max_policies)
        throw std::invalid_argument(
            "oracle: 2^" + std::to_string(bits) +
            " policies exceed budget " + std::to_string(budget.max_policies));
}

double oracle_mean(const FiniteDistribution& dist, const numvec& sample) {
    double mean = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        mean += dist.weight(i) * sample[i];
    return mean;
}

// Risk evaluation re-derived from the definitions: expectations are plain
// dot products and every CVaR goes through the minimization-form oracle,
// so this path shares no code with evaluate_risk().
double oracle_risk(const RiskSpec& spec, const FiniteDistribution& dist,
                   const numvec& sample) {
    switch (spec.kind) {
        case RiskKind::Expectation:
            return oracle_mean(dist, sample);
        case RiskKind::CVaR:
            return cvar_oracle(dist, sample, spec.alpha);
        case RiskKind::MeanCVaR:
            return (1.0 - spec.kappa) * oracle_mean(dist, sample) +
                   spec.kappa * cvar_oracle(dist, sample, spec.gamma);
        case RiskKind::MeanSemideviation: {
            const double mean = oracle_mean(dist, sample);
            double semidev = 0.0;
            for (std::size_t i = 0; i < dist.size(); ++i)
                semidev +=
                    dist.weight(i) * std::max(0.0, sample[i] - mean);
            return mean + spec.kappa * semidev;
        }
    }
    throw std::logic_error("oracle_risk: unknown risk kind");
}

// Cost-to-go of `policy` from (t, state), folding the scenario tree from
// the leaves. Deliberately unmemoized: each call walks its own subtree.
double tree_value(const StoppingModel& model, const PolicyTable& policy,
                  int t, std::size_t state) {
    if (t == model.horizon) return model.stop_cost(t)[state];
    if (policy[t][state] == Action::Stop) return model.stop_cost(t)[state];
    const FiniteDistribution& row = model.kernel.row(t, state);
    numvec continuation(row.size(), 0.0);
    for (std::size_t y = 0; y < row.size(); ++y)
        if (row.weight(y) > 0.0)
            continuation[y] = tree_value(model, policy, t + 1, y);
    return model.continue_cost(t)[state] +
           oracle_risk(model.risk[static_cast<std::size_t>(t)], row,
                       continuation);
}

}  // namespace

numvec nested_risk_tree(const StoppingModel& model, const PolicyTable& policy,
                        const EnumerationBudget& budget) {
    require_within(model, budget, /*count_policies=*/false);
    if (policy.size() != static_cast<std::size_t>(model.horizon))
        throw std::invalid_argument(
            "nested_risk_tree: policy has " + std::to_string(policy.size()) +
            " stages, model horizon is " + std::to_string(model.horizon));
    for (const auto& stage : policy)
        if (stage.size() != model.grid.size())
            throw std::invalid_argument(
                "nested_risk_tree: policy stage size mismatch");
    numvec values(model.grid.size());
    for (std::size_t s = 0; s < model.grid.size(); ++s)
        values[s] = tree_value(model, policy, 0, s);
    return values;
}

EnumerationResult enumerate_policies(const StoppingModel& model,
                                     const EnumerationBudget& budget) {
    require_within(model, budget, /*count_policies=*/true);
    const std::size_t states = model.grid.size();
    const auto horizon = static_cast<std::size_t>(model.horizon);
    const std::size_t bits = horizon * states;
    const std::size_t count = std::size_t{1} << bits;

    EnumerationResult result;
    result.values.assign(states, 0.0);
    result.best_policy.assign(states, {});
    result.policies_evaluated = count;

    PolicyTable policy(horizon, std::vector<Action>(states, Action::Stop));
    for (std::size_t index = 0; index < count; ++index) {
        // Lexicographic order over (t, state) with Stop < Continue: the
        // earliest slot is the most significant bit of `index`.
        for (std::size_t t = 0; t < horizon; ++t)
            for (std::size_t s = 0; s < states; ++s) {
                const std::size_t slot = t * states + s;
                const bool cont = (index >> (bits - 1 - slot)) & 1u;
                policy[t][s] = cont ? Action::Continue : Action::Stop;
            }
        const numvec values = nested_risk_tree(model, policy, budget);
        for (std::size_t s = 0; s < states; ++s) {
            if (index == 0 || values[s] < result.values[s]) {
                result.values[s] = values[s];
                result.best_policy[s] = policy;
            }
        }
    }
    return result;
}

}  // namespace riskstop
