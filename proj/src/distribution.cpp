#include "riskstop/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace riskstop {

FiniteDistribution::FiniteDistribution(numvec weights)
    : weights_(std::move(weights)) {
    detail::require(!weights_.empty(),
                    "FiniteDistribution: weight vector is empty");
    for (double& w : weights_) {
        detail::require(std::isfinite(w),
                        "FiniteDistribution: weight is not finite");
        detail::require(w >= -kWeightSlack,
                        "FiniteDistribution: negative weight");
        if (w < 0.0) w = 0.0;
    }
    // Sum in ascending weight order so the total depends only on the
    // multiset of weights: constructing from a reordered weight vector then
    // yields exactly the reordered normalized weights. Ascending order also
    // keeps rounding error minimal for nonnegative terms.
    numvec sorted = weights_;
    std::sort(sorted.begin(), sorted.end());
    double total = 0.0;
    for (double w : sorted) total += w;
    detail::require(std::fabs(total - 1.0) <= kRenormalizeTolerance,
                    "FiniteDistribution: weights sum to " +
                        std::to_string(total) + ", outside tolerance 1e-9");
    // Dividing by a total this close to 1 would only churn low bits (one
    // normalization pass leaves a residual of at most ~n ulps), so treat the
    // vector as normalized; this makes construction idempotent.
    if (std::fabs(total - 1.0) > kAlreadyNormalizedTolerance)
        for (double& w : weights_) w /= total;
    detail::require(support_size() > 0,
                    "FiniteDistribution: no strictly positive weight");
}

std::size_t FiniteDistribution::support_size() const {
    std::size_t count = 0;
    for (double w : weights_)
        if (w > 0.0) ++count;
    return count;
}

FiniteDistribution FiniteDistribution::point_mass(std::size_t i,
                                                  std::size_t n) {
    detail::require(i < n, "point_mass: index out of range");
    numvec w(n, 0.0);
    w[i] = 1.0;
    return FiniteDistribution(std::move(w));
}

}  // namespace riskstop
