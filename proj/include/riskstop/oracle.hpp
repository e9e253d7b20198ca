#pragma once

#include <cstddef>
#include <vector>

#include "riskstop/model.hpp"
#include "riskstop/solver.hpp"

namespace riskstop {

/// Limits for brute-force enumeration. The policy space has
/// 2^(horizon * |grid|) elements, so these bounds keep full suites fast.
struct EnumerationBudget {
    std::size_t max_states = 4;
    int max_horizon = 3;
    std::size_t max_policies = 4096;
};

/// Outcome of exhaustive policy enumeration.
struct EnumerationResult {
    /// Statewise minimum of the nested evaluation over every
    /// deterministic Markov policy.
    numvec values;
    /// For each start state, the lexicographically-first policy attaining
    /// that state's minimum. Policies are ordered as words over
    /// {Stop < Continue} read in (t, state) order.
    std::vector<PolicyTable> best_policy;
    std::size_t policies_evaluated = 0;
};

/// Evaluate one policy by explicit scenario-tree recursion from the
/// leaves, independently of the solver: risk functionals are re-derived
/// from first principles (CVaR through its minimization form). Returns
/// the cost-to-go table at t = 0, one entry per start state.
numvec nested_risk_tree(const StoppingModel& model, const PolicyTable& policy,
                        const EnumerationBudget& budget = {});

/// Iterate all deterministic Markov policies in lexicographic order,
/// evaluate each with nested_risk_tree, and take the statewise minimum.
/// Throws when the instance exceeds the budget.
EnumerationResult enumerate_policies(const StoppingModel& model,
                                     const EnumerationBudget& budget = {});

}  // namespace riskstop
