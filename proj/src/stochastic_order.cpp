#include "riskstop/stochastic_order.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace riskstop {

namespace {

constexpr double kMassTolerance = 1e-12;

Dominance combine_flags(bool a_ge_b, bool b_ge_a) {
    if (a_ge_b && b_ge_a) return Dominance::Equal;
    if (a_ge_b) return Dominance::ADominatesB;
    if (b_ge_a) return Dominance::BDominatesA;
    return Dominance::Incomparable;
}

/// Scalar comparison through the two CDFs: A dominates B iff
/// F_A(x) <= F_B(x) everywhere (A keeps more mass on high values).
FosdResult fosd_scalar(const FiniteDistribution& a,
                       const FiniteDistribution& b, const numvec& coords) {
    std::vector<std::size_t> order(coords.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return coords[i] < coords[j];
    });

    bool a_ge_b = true;  // F_A <= F_B pointwise
    bool b_ge_a = true;
    double cdf_a = 0.0;
    double cdf_b = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        cdf_a += a.weight(order[k]);
        cdf_b += b.weight(order[k]);
        // Only compare at the right edge of a group of equal coordinates.
        if (k + 1 < order.size() && coords[order[k + 1]] == coords[order[k]])
            continue;
        if (cdf_a > cdf_b + kMassTolerance) a_ge_b = false;
        if (cdf_b > cdf_a + kMassTolerance) b_ge_a = false;
    }
    return {combine_flags(a_ge_b, b_ge_a), false};
}

/// Exact partial-order comparison by enumerating every upper set of the
/// support poset (feasible up to kUpperSetEnumerationLimit points).
FosdResult fosd_upper_sets(const FiniteDistribution& a,
                           const FiniteDistribution& b,
                           const std::vector<numvec>& support,
                           std::size_t dims) {
    const std::size_t n = support.size();
    std::vector<std::uint32_t> up(n, 0);  // up[i]: outcomes j with p_i <= p_j
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            bool leq = true;
            for (std::size_t d = 0; d < dims && leq; ++d)
                leq = support[i][d] <= support[j][d];
            if (leq) up[i] |= (std::uint32_t{1} << j);
        }
    }

    // Subset sums via the standard strip-lowest-bit recurrence.
    const std::size_t count = std::size_t{1} << n;
    numvec sum_a(count, 0.0);
    numvec sum_b(count, 0.0);
    for (std::size_t s = 1; s < count; ++s) {
        const std::size_t low = s & (~s + 1);
        const std::size_t rest = s ^ low;
        const int bit = std::countr_zero(static_cast<std::uint32_t>(low));
        sum_a[s] = sum_a[rest] + a.weight(static_cast<std::size_t>(bit));
        sum_b[s] = sum_b[rest] + b.weight(static_cast<std::size_t>(bit));
    }

    bool a_ge_b = true;
    bool b_ge_a = true;
    for (std::size_t s = 0; s < count && (a_ge_b || b_ge_a); ++s) {
        bool upper = true;
        for (std::size_t rem = s; rem != 0 && upper;) {
            const std::size_t low = rem & (~rem + 1);
            const int bit = std::countr_zero(static_cast<std::uint32_t>(low));
            upper = (up[static_cast<std::size_t>(bit)] & ~s) == 0;
            rem ^= low;
        }
        if (!upper) continue;
        if (sum_a[s] < sum_b[s] - kMassTolerance) a_ge_b = false;
        if (sum_b[s] < sum_a[s] - kMassTolerance) b_ge_a = false;
    }
    return {combine_flags(a_ge_b, b_ge_a), false};
}

/// Necessary marginal check for large partial-order supports. Crossed
/// marginals disprove dominance exactly; agreeing marginals only support
/// it, hence the approximate flag on positive verdicts.
FosdResult fosd_marginals(const FiniteDistribution& a,
                          const FiniteDistribution& b,
                          const std::vector<numvec>& support,
                          std::size_t dims) {
    bool a_ge_b = true;
    bool b_ge_a = true;
    for (std::size_t d = 0; d < dims; ++d) {
        numvec coords;
        coords.reserve(support.size());
        for (const auto& p : support) coords.push_back(p[d]);
        const FosdResult marginal = fosd_scalar(a, b, coords);
        if (marginal.verdict != Dominance::ADominatesB &&
            marginal.verdict != Dominance::Equal)
            a_ge_b = false;
        if (marginal.verdict != Dominance::BDominatesA &&
            marginal.verdict != Dominance::Equal)
            b_ge_a = false;
    }
    const Dominance verdict = combine_flags(a_ge_b, b_ge_a);
    // A positive verdict rests on a necessary-but-not-sufficient test;
    // Incomparable means some marginal crossed, which is conclusive.
    return {verdict, verdict != Dominance::Incomparable};
}

}  // namespace

std::string to_string(Dominance d) {
    switch (d) {
        case Dominance::ADominatesB: return "a-dominates-b";
        case Dominance::BDominatesA: return "b-dominates-a";
        case Dominance::Equal: return "equal";
        case Dominance::Incomparable: return "incomparable";
    }
    throw std::logic_error("to_string(Dominance): unknown value");
}

FosdResult fosd_compare(const FiniteDistribution& a,
                        const FiniteDistribution& b,
                        const std::vector<numvec>& support,
                        const OrderSpec& order) {
    detail::require(a.size() == b.size(),
                    "fosd_compare: distributions differ in size");
    detail::require(support.size() == a.size(),
                    "fosd_compare: support size does not match distributions");
    for (const auto& p : support)
        detail::require(p.size() == order.dims,
                        "fosd_compare: support point has wrong dimension");

    if (order.kind == OrderSpec::Kind::TotalScalar) {
        detail::require(order.dims == 1,
                        "fosd_compare: scalar order requires dims == 1");
        numvec coords;
        coords.reserve(support.size());
        for (const auto& p : support) coords.push_back(p[0]);
        return fosd_scalar(a, b, coords);
    }
    if (support.size() <= kUpperSetEnumerationLimit)
        return fosd_upper_sets(a, b, support, order.dims);
    return fosd_marginals(a, b, support, order.dims);
}

FosdResult fosd_compare(const FiniteDistribution& a,
                        const FiniteDistribution& b, const numvec& support) {
    std::vector<numvec> points;
    points.reserve(support.size());
    for (double c : support) points.push_back(numvec{c});
    return fosd_compare(a, b, points, OrderSpec::total_scalar());
}

ComonotoneVerdict comonotone_pair_check(const numvec& x, const numvec& y) {
    detail::require(x.size() == y.size(),
                    "comonotone_pair_check: samples differ in length");
    constexpr double kSlack = 1e-12;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if ((x[i] - x[j]) * (y[i] - y[j]) < -kSlack)
                return {false, i, j};
        }
    }
    return {true, 0, 0};
}

}  // namespace riskstop
