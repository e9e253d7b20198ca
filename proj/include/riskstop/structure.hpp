#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riskstop/model.hpp"
#include "riskstop/solver.hpp"

namespace riskstop {

enum class Verdict { Holds, Violated, NotApplicable, ApproximateHolds };
std::string to_string(Verdict verdict);

/// Location of a violation; enough to re-evaluate the offending
/// comparison by hand.
struct Witness {
    int t = -1;
    std::size_t state = 0;        // flat index of the offending state
    std::size_t other_state = 0;  // second state for pairwise properties
    std::size_t dim = 0;          // coordinate the pair differs in
    double lhs = 0.0;
    double rhs = 0.0;
    std::string description;
};

struct StructureCheck {
    std::string item;
    Verdict verdict = Verdict::NotApplicable;
    std::optional<Witness> witness;
    bool ok() const { return verdict != Verdict::Violated; }
};

struct StructureReport {
    std::vector<StructureCheck> checks;
    bool all_hold() const;
    const StructureCheck* find(std::string_view item) const;
};

/// Kernel rows stochastically increasing in the state: scalar grids use
/// the total order, multi-dimensional grids the componentwise order.
/// Verdict is ApproximateHolds when some positive comparison had to fall
/// back to the marginal criterion (large multi-dimensional supports).
StructureCheck check_stochastic_monotonicity(const StoppingModel& model);

/// Stop and continue cost tables nonincreasing in every coordinate.
StructureCheck check_monotone_costs(const StoppingModel& model);

/// Product-form conditions for a dimension split (first block vs rest):
///  - costs nonincreasing in the first-block coordinates,
///  - the law of the second-block coordinates does not depend on the
///    first-block coordinates,
///  - conditionally on each second-block outcome, the first-block law is
///    stochastically increasing in the first-block coordinates.
StructureReport check_partial_assumptions(
    const StoppingModel& model, const std::vector<std::size_t>& first_block);

/// Value tables nonincreasing along the listed dimensions (all dimensions
/// when the list is empty), holding the other coordinates fixed.
StructureCheck check_value_monotonicity(const StateGrid& grid,
                                        const std::vector<numvec>& values,
                                        const std::vector<std::size_t>& dims =
                                            {});

/// Loss tables nonincreasing (or strictly decreasing) in every coordinate.
StructureCheck check_loss_monotonicity(const StateGrid& grid,
                                       const std::vector<numvec>& losses,
                                       bool strict = false);

enum class Orientation {
    StopBelow,  // stop region is a lower interval: stop iff x_i <= value
    StopAbove,  // stop region is an upper interval: stop iff x_i >= value
};
std::string to_string(Orientation orientation);

enum class SliceKind { Boundary, AllStop, AllContinue };

/// One scan line: the threshold is the stop-side boundary coordinate
/// (largest stop coordinate for StopBelow, smallest for StopAbove, per
/// the stop-on-tie convention). Slices without any transition are stored
/// canonically as StopBelow with value -inf (no stop) or +inf (all stop).
struct ThresholdEntry {
    double value = 0.0;
    Orientation orientation = Orientation::StopBelow;
    SliceKind kind = SliceKind::Boundary;
};

struct ThresholdTable {
    std::size_t dim = 0;                   // scanned dimension
    std::vector<std::size_t> other_dims;   // remaining dims, ascending
    std::vector<std::size_t> slice_sizes;  // axis sizes of other_dims
    // entries[t][slice]; slices enumerate the other dims row-major.
    std::vector<std::vector<ThresholdEntry>> entries;
    std::size_t slice_count() const;
    std::vector<std::size_t> slice_multi(std::size_t slice) const;
    std::size_t slice_flat(const std::vector<std::size_t>& multi) const;
};

struct ControlLimitExtraction {
    StructureCheck check;  // Violated if some slice has >= 2 transitions
    ThresholdTable table;
};

/// Scan the policy along `dim` for each period and slice; at most one
/// action change per scan line is allowed.
ControlLimitExtraction extract_control_limits(const StateGrid& grid,
                                              const PolicyTable& policy,
                                              std::size_t dim);

/// Conditions under which stopping on a nonnegative one-step loss is
/// optimal, plus the conclusion they are meant to deliver.
struct OneStepConditionsReport {
    // If the one-step loss is nonnegative somewhere, it stays nonnegative
    // on every reachable next state (checked by support enumeration).
    StructureCheck propagation;
    // One-step loss monotone in the state, same direction at every t.
    StructureCheck monotone_one_step;
    // For each state, the one-step losses at t and t+1 agree in sign
    // (zero counts as nonnegative).
    StructureCheck sign_stability;
    // Dynamics never move the state against the detected direction:
    // upward drift for a nondecreasing loss, downward for nonincreasing.
    StructureCheck dynamic_ordering;
    // Conclusion: one-step and continuation losses agree in sign
    // cellwise, so the lookahead policy is optimal.
    StructureCheck sign_agreement;
    int direction = 0;  // +1 nondecreasing, -1 nonincreasing, 0 constant
    bool assumptions_hold() const;
    bool all_hold() const;
    std::vector<const StructureCheck*> items() const;
};

OneStepConditionsReport check_one_step_conditions(const StoppingModel& model,
                                                  const SolveResult& solution);

/// On a time-homogeneous model, stop regions only grow with t, so
/// StopBelow thresholds are nondecreasing in t and StopAbove thresholds
/// nonincreasing. NotApplicable if the model is not time-homogeneous.
StructureCheck check_threshold_time_monotonicity(const StoppingModel& model,
                                                 const ThresholdTable& table);

/// With losses monotone in the same direction in the scanned and the
/// probing dimension, the stop region shrinks as the probing coordinate
/// grows: StopBelow thresholds are nonincreasing in `probe_dim` and
/// StopAbove thresholds nondecreasing.
StructureCheck check_threshold_cross_monotonicity(const StateGrid& grid,
                                                  const ThresholdTable& table,
                                                  std::size_t probe_dim);

/// Thresholds of the more risk-averse instance bound the other's: stop
/// regions of `more_averse` contain those of `less_averse` slicewise.
StructureCheck check_threshold_instance_ordering(
    const ThresholdTable& more_averse, const ThresholdTable& less_averse);

}  // namespace riskstop
