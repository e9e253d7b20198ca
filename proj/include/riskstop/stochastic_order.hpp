#pragma once

#include <cstddef>
#include <vector>

#include "riskstop/common.hpp"
#include "riskstop/distribution.hpp"

namespace riskstop {

/// Order on the common support of two distributions.
struct OrderSpec {
    enum class Kind {
        TotalScalar,           ///< support points are reals, usual order
        ComponentwisePartial,  ///< support points are vectors, x <= y iff
                               ///< x_d <= y_d for every coordinate d
    };
    Kind kind = Kind::TotalScalar;
    std::size_t dims = 1;

    static OrderSpec total_scalar() { return {Kind::TotalScalar, 1}; }
    static OrderSpec componentwise(std::size_t dims) {
        return {Kind::ComponentwisePartial, dims};
    }
};

enum class Dominance {
    ADominatesB,
    BDominatesA,
    Equal,
    Incomparable,
};

std::string to_string(Dominance d);

/// Result of a first-order stochastic dominance comparison. `approximate`
/// marks verdicts produced by the coordinatewise-marginal fallback on
/// large partial-order supports; scalar comparisons and upper-set
/// enumerations are exact (up to the 1e-12 mass tolerance).
struct FosdResult {
    Dominance verdict = Dominance::Incomparable;
    bool approximate = false;
};

/// Largest support for which the partial-order comparison enumerates all
/// upper sets exactly; bigger supports fall back to marginal comparison.
inline constexpr std::size_t kUpperSetEnumerationLimit = 20;

/// First-order stochastic dominance between two distributions on a shared
/// support. "A dominates B" means A is the stochastically larger law:
/// E[v(X_A)] >= E[v(X_B)] for every increasing v, equivalently
/// P_A(U) >= P_B(U) for every upper set U of the support poset.
///
/// TotalScalar: exact, via pointwise comparison of the two CDFs on the
/// sorted support. ComponentwisePartial: exact upper-set enumeration while
/// the support has at most kUpperSetEnumerationLimit points; beyond that,
/// the verdict of the necessary coordinatewise-marginal check is returned
/// with `approximate = true` (marginal failure disproves dominance
/// exactly, so Incomparable from crossed marginals stays exact).
FosdResult fosd_compare(const FiniteDistribution& a,
                        const FiniteDistribution& b,
                        const std::vector<numvec>& support,
                        const OrderSpec& order);

/// Scalar convenience overload.
FosdResult fosd_compare(const FiniteDistribution& a,
                        const FiniteDistribution& b, const numvec& support);

/// Verdict of a pairwise comonotonicity check. When the pair fails, (i, j)
/// is an outcome pair with (x_i - x_j)(y_i - y_j) < 0; re-evaluating that
/// product reproduces the violation.
struct ComonotoneVerdict {
    bool comonotone = true;
    std::size_t i = 0;
    std::size_t j = 0;
};

/// Check that two samples on a common outcome space move together:
/// (x(w) - x(w'))(y(w) - y(w')) >= 0 for all outcome pairs.
ComonotoneVerdict comonotone_pair_check(const numvec& x, const numvec& y);

}  // namespace riskstop
