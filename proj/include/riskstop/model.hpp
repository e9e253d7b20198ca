#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "riskstop/distribution.hpp"
#include "riskstop/grid.hpp"
#include "riskstop/risk.hpp"

namespace riskstop {

/// Scalar shock with finitely many atoms, strictly increasing.
struct DiscreteShock {
    numvec atoms;
    FiniteDistribution law;

    DiscreteShock(numvec atoms_in, FiniteDistribution law_in);
};

/// Transition probabilities: rows[t][state] is the law of the next state
/// given that the process continues at time t in `state`. Defined for
/// t = 0, ..., T-1.
struct TransitionKernel {
    std::vector<std::vector<FiniteDistribution>> rows;

    std::size_t horizon() const { return rows.size(); }
    const FiniteDistribution& row(std::size_t t, std::size_t state) const {
        return rows.at(t).at(state);
    }
    void validate(std::size_t states) const;

    bool operator==(const TransitionKernel& o) const { return rows == o.rows; }
};

enum class MonotoneDirection { Increasing, Decreasing };

/// Serializable description of a built-in shared-shock map.
///  - "arf":         x = (running average, spot);
///                   f_t(x, w) = ((t x1 + w x2)/(t+1), w x2)
///  - "affine":      scalar, f(x, w) = lambda x + w
///  - "max_offer":   scalar, f(x, w) = max(x, w)
///  - "index_shift": coordinate moves up shifts[d][k] grid cells under
///                   atom k, saturating at the top of the axis
///  - "custom":      not serializable; evaluator supplied by the caller
struct DynamicsDescriptor {
    std::string name;
    double lambda = 0.0;
    std::vector<std::vector<long>> shifts;

    bool operator==(const DynamicsDescriptor& o) const {
        return name == o.name && lambda == o.lambda && shifts == o.shifts;
    }
};

using ShockMap = std::function<numvec(int t, const numvec& x, double w)>;

/// Shared-shock dynamics: every coordinate of the next state is driven by
/// the same scalar shock draw. `directions[d]` declares how coordinate d
/// moves with the shock; the kernel builder verifies the declaration on
/// the whole grid x atom product and rejects violations with a witness.
struct SharedShockDynamics {
    DiscreteShock shock;
    std::vector<MonotoneDirection> directions;
    DynamicsDescriptor descriptor;
    ShockMap custom;  // consulted only when descriptor.name == "custom"
};

/// Evaluator for a built-in descriptor on the given grid.
ShockMap dynamics_map(const DynamicsDescriptor& descriptor,
                      const StateGrid& grid);

/// Pairwise comonotonicity of the post-projection next-state coordinates,
/// checked row by row. The witness fields identify the first failing
/// (time, state, coordinate pair, atom pair).
struct ComonotonicityCertificate {
    bool comonotone = true;
    int t = -1;
    std::size_t state = 0;
    std::size_t dim_a = 0;
    std::size_t dim_b = 0;
    std::size_t atom_i = 0;
    std::size_t atom_j = 0;
};

struct SharedShockBuild {
    TransitionKernel kernel;
    ComonotonicityCertificate certificate;
    double max_displacement = 0.0;  // worst projection distance seen
};

enum class Projection { NearestNeighbor };

/// Push the shock law through f_t and project each image onto the grid
/// (nearest neighbor, ties to the lower grid point). The certificate is
/// computed on the projected coordinates, which is what the solver sees.
SharedShockBuild build_shared_shock_kernel(
    const StateGrid& grid, const SharedShockDynamics& dynamics, int horizon,
    Projection projection = Projection::NearestNeighbor);

/// Tabular kernel from explicit probability rows; rejects a non-stochastic
/// row with a witness (time, state, row sum) in the error message.
TransitionKernel build_tabular_kernel(
    const StateGrid& grid,
    const std::vector<std::vector<numvec>>& row_tables);

/// Stop costs for t = 0..T and continue costs for t = 0..T-1, tabulated
/// over flat state indices.
struct CostModel {
    std::vector<numvec> stop;
    std::vector<numvec> cont;

    bool operator==(const CostModel& o) const {
        return stop == o.stop && cont == o.cont;
    }
};

/// Finite-horizon optimal stopping instance. The controller pays c_t and
/// moves by the kernel while continuing, or pays s_t once and the process
/// ends; at t = T stopping is forced. Risk of the next-period value is
/// measured by risk[t].
struct StoppingModel {
    int horizon = 0;
    StateGrid grid{{numvec{0.0}}};
    TransitionKernel kernel;
    CostModel costs;
    std::vector<RiskSpec> risk;

    /// Present when the kernel came from a shared-shock construction.
    std::optional<SharedShockDynamics> dynamics;
    std::optional<ComonotonicityCertificate> certificate;
    double max_projection_displacement = 0.0;

    void validate() const;
    bool time_homogeneous() const;

    const numvec& stop_cost(int t) const { return costs.stop.at(t); }
    const numvec& continue_cost(int t) const { return costs.cont.at(t); }
};

/// Average/spot contract: state (x1, x2) = (running average, spot), spot
/// multiplied each period by a positive shock, the average extended by the
/// new spot. Stopping pays -(a_t x1 + b_t x2 + c_t); continuing is free.
/// The shock is a lognormal(mu, sigma) discretized into `shock_atoms`
/// equiprobable atoms at the quantile midpoints (i - 1/2)/N. Axes are
/// geometric with `grid_sizes` points spanning the T-step reachable range.
StoppingModel make_arf_model(const numvec& a, const numvec& b, const numvec& c,
                             double mu, double sigma, std::size_t shock_atoms,
                             std::array<std::size_t, 2> grid_sizes, int horizon,
                             const RiskSpec& risk);

/// Selling with a deadline: price moves by x -> lambda x + W with
/// lambda > 1; stopping sells at the current price (cost -x), continuing
/// is free. Time-homogeneous by construction.
StoppingModel make_deadline_sale_model(double lambda,
                                       const DiscreteShock& shock,
                                       const numvec& grid_axis, int horizon,
                                       const RiskSpec& risk);

/// Asset sale with recall: the best offer so far moves by
/// x -> max(x, W) with nonnegative bounded offers W; stopping sells the
/// best offer, invested at rate r until the deadline: cost
/// -x (1+r)^(T-t). Offers should sit on the grid so the dynamics are
/// projection-exact.
StoppingModel make_asset_sale_model(double r, const DiscreteShock& offers,
                                    const numvec& grid_axis, int horizon,
                                    const RiskSpec& risk);

/// Two-period cost pair (Z1, Z2) given by an explicit joint pmf, used for
/// the nested-versus-joint CVaR comparisons.
struct CounterexampleScenario {
    std::string name;
    /// Entries (z1, z2, probability).
    std::vector<std::array<double, 3>> pmf;
    double alpha = 0.0;
    /// Headline numbers as exact rationals, numerator/denominator.
    long long joint_num = 0, joint_den = 1;
    long long nested_num = 0, nested_den = 1;
};

/// The two scenarios behind the headline counterexamples:
///  - "tower": nesting CVaR is not the same as CVaR of the sum
///    (joint 52 vs nested 4000/97), and the nested value may fall below
///    the joint one, so CVaR fails the tower property;
///  - "subadditivity": CVaR(Z1 + Z2) = 100 < 100 + 100, strict
///    subadditivity with comonotonicity failing.
std::pair<CounterexampleScenario, CounterexampleScenario>
make_counterexamples();

/// CVaR of Z1 + Z2 under the scenario's joint pmf at its tail level.
double scenario_joint_cvar(const CounterexampleScenario& scenario);

/// CVaR of the indicated margin (0 for Z1, 1 for Z2).
double scenario_marginal_cvar(const CounterexampleScenario& scenario,
                              int which);

/// Nested evaluation CVaR(Z1 + CVaR(Z2 | Z1)) at the scenario tail level.
double scenario_nested_cvar(const CounterexampleScenario& scenario);

/// The tower scenario recast as a 2-period chain model (states are the
/// distinct Z1/Z2 levels, continue costs collect Z1, the terminal cost
/// collects Z2, stop costs are prohibitive before the end). Solving or
/// folding the always-continue policy reproduces the nested value.
StoppingModel make_tower_chain_model();

}  // namespace riskstop
