#include "riskstop/risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace riskstop {

namespace {

void check_pair(const FiniteDistribution& dist, const ValuedSample& values) {
    detail::require(values.size() == dist.size(),
                    "risk: sample length does not match distribution size");
    for (double v : values)
        detail::require(std::isfinite(v), "risk: sample value is not finite");
}

void check_tail_level(double alpha) {
    detail::require(alpha > 0.0 && alpha <= 1.0,
                    "risk: tail level must lie in (0, 1]");
}

/// Atom indices sorted by (value desc, weight desc, index asc). Processing
/// atoms in this order makes every evaluator exactly invariant under joint
/// permutations of (weights, values): equal (value, weight) pairs commute.
std::vector<std::size_t> canonical_order(const FiniteDistribution& dist,
                                         const ValuedSample& values) {
    std::vector<std::size_t> order(dist.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) {
                  if (values[a] != values[b]) return values[a] > values[b];
                  if (dist.weight(a) != dist.weight(b))
                      return dist.weight(a) > dist.weight(b);
                  return a < b;
              });
    return order;
}

double mean_canonical(const FiniteDistribution& dist,
                      const ValuedSample& values) {
    double m = 0.0;
    for (std::size_t i : canonical_order(dist, values))
        m += dist.weight(i) * values[i];
    return m;
}

}  // namespace

std::string to_string(RiskKind kind) {
    switch (kind) {
        case RiskKind::Expectation: return "expectation";
        case RiskKind::CVaR: return "cvar";
        case RiskKind::MeanCVaR: return "meancvar";
        case RiskKind::MeanSemideviation: return "meansemidev";
    }
    throw std::logic_error("to_string(RiskKind): unknown kind");
}

RiskSpec RiskSpec::expectation() { return RiskSpec{}; }

RiskSpec RiskSpec::cvar(double alpha) {
    RiskSpec s;
    s.kind = RiskKind::CVaR;
    s.alpha = alpha;
    s.validate();
    return s;
}

RiskSpec RiskSpec::mean_cvar(double kappa, double gamma) {
    RiskSpec s;
    s.kind = RiskKind::MeanCVaR;
    s.kappa = kappa;
    s.gamma = gamma;
    s.validate();
    return s;
}

RiskSpec RiskSpec::mean_semideviation(double kappa) {
    RiskSpec s;
    s.kind = RiskKind::MeanSemideviation;
    s.kappa = kappa;
    s.validate();
    return s;
}

void RiskSpec::validate() const {
    switch (kind) {
        case RiskKind::Expectation:
            return;
        case RiskKind::CVaR:
            detail::require(alpha > 0.0 && alpha <= 1.0,
                            "RiskSpec: cvar tail level must lie in (0, 1]");
            return;
        case RiskKind::MeanCVaR:
            detail::require(kappa >= 0.0 && kappa <= 1.0,
                            "RiskSpec: meancvar weight must lie in [0, 1]");
            detail::require(gamma > 0.0 && gamma <= 1.0,
                            "RiskSpec: meancvar tail level must lie in (0, 1]");
            return;
        case RiskKind::MeanSemideviation:
            detail::require(
                kappa >= 0.0 && kappa <= 1.0,
                "RiskSpec: semideviation weight must lie in [0, 1]");
            return;
    }
    throw std::logic_error("RiskSpec: unknown kind");
}

std::string RiskSpec::describe() const {
    std::ostringstream out;
    out << to_string(kind);
    switch (kind) {
        case RiskKind::Expectation: break;
        case RiskKind::CVaR: out << ":" << alpha; break;
        case RiskKind::MeanCVaR: out << ":" << kappa << ":" << gamma; break;
        case RiskKind::MeanSemideviation: out << ":" << kappa; break;
    }
    return out.str();
}

double cvar(const FiniteDistribution& dist, const ValuedSample& values,
            double alpha) {
    check_pair(dist, values);
    check_tail_level(alpha);
    double taken = 0.0;
    double sum = 0.0;
    bool constant_tail = true;
    double tail_value = 0.0;
    for (std::size_t i : canonical_order(dist, values)) {
        const double take = std::min(dist.weight(i), alpha - taken);
        if (take <= 0.0) continue;  // zero-weight atom
        if (taken == 0.0)
            tail_value = values[i];
        else if (values[i] != tail_value)
            constant_tail = false;
        sum += take * values[i];
        taken += take;
        if (taken >= alpha) break;
    }
    // A constant tail averages to its value; return it exactly instead of
    // reassembling it from rounded partial products.
    if (constant_tail) return tail_value;
    return sum / alpha;
}

double cvar_oracle(const FiniteDistribution& dist, const ValuedSample& values,
                   double alpha) {
    check_pair(dist, values);
    check_tail_level(alpha);
    // The infimum of u + E[(Z - u)+]/alpha over real u is attained at some
    // quantile of Z, hence at a support value; scanning them all is enough.
    double best = std::numeric_limits<double>::infinity();
    const auto order = canonical_order(dist, values);
    for (std::size_t k : order) {
        if (dist.weight(k) <= 0.0) continue;
        const double u = values[k];
        double excess = 0.0;
        for (std::size_t i : order)
            excess += dist.weight(i) * std::max(values[i] - u, 0.0);
        best = std::min(best, u + excess / alpha);
    }
    return best;
}

FiniteDistribution envelope_maximize(const FiniteDistribution& dist,
                                     const ValuedSample& values,
                                     double alpha) {
    check_pair(dist, values);
    check_tail_level(alpha);
    if (alpha == 1.0) return dist;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*lo == *hi) return dist;  // constant sample: dist itself is optimal

    std::vector<std::size_t> order(dist.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] > values[b];
        return a < b;  // documented tie-break: ascending index
    });

    numvec out(dist.size(), 0.0);
    double taken = 0.0;
    for (std::size_t i : order) {
        const double take = std::min(dist.weight(i), alpha - taken);
        if (take <= 0.0) continue;  // zero-weight atom
        out[i] = take / alpha;
        taken += take;
        if (taken >= alpha) break;
    }
    return FiniteDistribution(std::move(out));
}

FiniteDistribution cvar_minimal_element(const FiniteDistribution& dist,
                                        const numvec& state_values,
                                        double alpha) {
    detail::require(state_values.size() == dist.size(),
                    "cvar_minimal_element: state values do not match "
                    "distribution size");
    check_tail_level(alpha);
    for (std::size_t i = 1; i < state_values.size(); ++i)
        detail::require(state_values[i - 1] < state_values[i],
                        "cvar_minimal_element: state values must be strictly "
                        "increasing (total scalar order required)");
    // Lower alpha-tail in state order, renormalized. Costs decrease in the
    // state, so the worst cost tail is the lowest state tail.
    numvec out(dist.size(), 0.0);
    double taken = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const double take = std::min(dist.weight(i), alpha - taken);
        if (take <= 0.0) continue;  // zero-weight atom
        out[i] = take / alpha;
        taken += take;
        if (taken >= alpha) break;
    }
    return FiniteDistribution(std::move(out));
}

double evaluate_risk(const RiskSpec& spec, const FiniteDistribution& dist,
                     const ValuedSample& values) {
    spec.validate();
    check_pair(dist, values);
    switch (spec.kind) {
        case RiskKind::Expectation:
            return mean_canonical(dist, values);
        case RiskKind::CVaR:
            return cvar(dist, values, spec.alpha);
        case RiskKind::MeanCVaR:
            return (1.0 - spec.kappa) * mean_canonical(dist, values) +
                   spec.kappa * cvar(dist, values, spec.gamma);
        case RiskKind::MeanSemideviation: {
            const double m = mean_canonical(dist, values);
            double upper = 0.0;
            for (std::size_t i : canonical_order(dist, values))
                upper += dist.weight(i) * std::max(values[i] - m, 0.0);
            return m + spec.kappa * upper;
        }
    }
    throw std::logic_error("evaluate_risk: unknown kind");
}

}  // namespace riskstop
