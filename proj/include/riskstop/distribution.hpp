#pragma once

#include <cstddef>

#include "riskstop/common.hpp"

namespace riskstop {

/// Probability mass function over a finite outcome index set {0, ..., n-1}.
/// Outcomes carry no values of their own; operations pair a distribution
/// with an aligned vector of values (a sample) or of state coordinates.
///
/// Construction rules:
///  - every weight must be >= -kWeightSlack (tiny negatives from float
///    arithmetic are clamped to zero, anything worse is rejected),
///  - the total mass must be within kRenormalizeTolerance of 1; the vector
///    is then renormalized so downstream code can rely on sum == 1 up to
///    roundoff,
///  - totals within kAlreadyNormalizedTolerance of 1 — drift one
///    normalization pass can itself produce — are accepted as-is, which
///    makes construction idempotent: rebuilding a distribution from its own
///    weights() reproduces it bit for bit,
///  - at least one weight must be strictly positive.
///
/// The renormalization total is accumulated over the weights in ascending
/// order, so it depends only on the multiset of weights: constructing from
/// a reordered weight vector yields exactly the reordered weights.
class FiniteDistribution {
public:
    static constexpr double kAlreadyNormalizedTolerance = 1e-14;
    static constexpr double kRenormalizeTolerance = 1e-9;
    static constexpr double kWeightSlack = 1e-12;

    explicit FiniteDistribution(numvec weights);

    const numvec& weights() const { return weights_; }
    double weight(std::size_t i) const { return weights_.at(i); }
    std::size_t size() const { return weights_.size(); }

    /// Number of outcomes with strictly positive weight.
    std::size_t support_size() const;

    /// True when all mass sits on a single outcome.
    bool is_point_mass() const { return support_size() == 1; }

    bool operator==(const FiniteDistribution& other) const {
        return weights_ == other.weights_;
    }
    bool operator!=(const FiniteDistribution& other) const {
        return !(*this == other);
    }

    /// Point mass at outcome `i` out of `n`.
    static FiniteDistribution point_mass(std::size_t i, std::size_t n);

private:
    numvec weights_;
};

}  // namespace riskstop
