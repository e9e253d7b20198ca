#pragma once

#include <cstdint>
#include <vector>

#include "riskstop/model.hpp"

namespace riskstop {

// Seeded generator families used by tests and the command-line tool.  All
// generators are deterministic functions of their arguments.

enum class MonotoneMode {
    // Kernel stochastically monotone in the full componentwise order and
    // costs nonincreasing in every coordinate.
    Joint,
    // Two-dimensional product structure: the second coordinate's marginal
    // law depends only on the second coordinate, the conditional law of
    // the first coordinate is stochastically increasing in it, and costs
    // are nonincreasing in the first coordinate for each fixed second
    // coordinate (no monotonicity across the second coordinate).
    Partial,
};

// Time-homogeneous model on a (possibly multi-dimensional) grid with the
// monotone structure selected by `mode`.  Scalar kernels are built by
// stacking pointwise-dominated CDFs; joint multi-dimensional kernels are
// products of monotone scalar kernels, which preserves the componentwise
// dominance order.  Partial mode requires exactly two dimensions.
StoppingModel random_monotone_model(std::uint64_t seed,
                                    const std::vector<std::size_t>& sizes,
                                    int horizon, const RiskSpec& risk,
                                    MonotoneMode mode = MonotoneMode::Joint);

// Unstructured scalar model with independent random rows and costs for
// every period; intended for brute-force cross-checks on small sizes.
StoppingModel random_dense_model(std::uint64_t seed, std::size_t states,
                                 int horizon, const RiskSpec& risk);

struct ShiftModelOptions {
    double stay_probability = 0.3;  // mass of the no-move shock atom
    double growth = 0.0;            // cost growth ratio; <= 0 picks a safe one
    std::size_t atom_count = 3;     // shock support size (>= 2)
};

// Smallest cost-growth ratio guaranteeing that the one-step stopping loss
// of a shift model is strictly decreasing in every state coordinate, with
// a 5% safety margin.  `stay_probability` is the mass of the shock atom
// that leaves the state unchanged.
double min_safe_growth(const RiskSpec& risk, double stay_probability);

// Model driven by a shared shock that moves every coordinate upward by a
// whole number of grid cells (saturating at the top), so transitions land
// exactly on the grid and the projection displacement is zero.  Stop costs
// are -beta_t * <a, x> + eta_t with beta growing geometrically; the growth
// ratio makes the one-step loss strictly decreasing in every coordinate,
// and the offsets eta_t are tuned so both stop and continue regions are
// non-empty at every period.
StoppingModel random_shift_model(std::uint64_t seed,
                                 const std::vector<std::size_t>& sizes,
                                 int horizon, const RiskSpec& risk,
                                 const ShiftModelOptions& options = {});

}  // namespace riskstop
