#include "riskstop/axioms.hpp"

#include <algorithm>
#include <cmath>

namespace riskstop {

namespace {

constexpr double kTolerance = 1e-10;

numvec random_weights(Rng& rng, std::size_t n) {
    numvec w(n);
    double total = 0.0;
    for (double& v : w) {
        v = 0.05 + rng.uniform();  // bounded away from zero
        total += v;
    }
    for (double& v : w) v /= total;
    return w;
}

numvec random_sample(Rng& rng, std::size_t n) {
    numvec x(n);
    for (double& v : x) v = rng.uniform(-5.0, 5.0);
    return x;
}

/// Comonotone pair: sort two independent samples and shuffle both with the
/// same permutation, so they stay aligned outcome by outcome.
std::pair<numvec, numvec> random_comonotone_pair(Rng& rng, std::size_t n) {
    numvec x = random_sample(rng, n);
    numvec y = random_sample(rng, n);
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    for (std::size_t k = n; k > 1; --k) {
        const std::size_t j = rng.uniform_index(k);
        std::swap(x[k - 1], x[j]);
        std::swap(y[k - 1], y[j]);
    }
    return {std::move(x), std::move(y)};
}

}  // namespace

bool AxiomProbeReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

const AxiomCheck* AxiomProbeReport::find(const std::string& property) const {
    for (const auto& c : checks)
        if (c.property == property) return &c;
    return nullptr;
}

AxiomProbeReport axiom_probe(const RiskSpec& spec, int trials,
                             std::uint64_t seed) {
    spec.validate();
    detail::require(trials > 0, "axiom_probe: trials must be positive");
    Rng rng(seed);

    AxiomProbeReport report;
    report.spec = spec;
    report.trials = trials;
    AxiomCheck monotonicity{"monotonicity", true, {}};
    AxiomCheck translation{"translation-invariance", true, {}};
    AxiomCheck homogeneity{"positive-homogeneity", true, {}};
    AxiomCheck convexity{"convexity", true, {}};
    AxiomCheck additivity{"comonotone-additivity", true, {}};

    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + rng.uniform_index(5);
        const FiniteDistribution dist(random_weights(rng, n));
        const numvec w = dist.weights();

        if (monotonicity.passed) {
            numvec z = random_sample(rng, n);
            numvec up = z;
            for (double& v : up) v += rng.uniform(0.0, 2.0);
            const double lhs = evaluate_risk(spec, dist, z);
            const double rhs = evaluate_risk(spec, dist, up);
            if (rhs < lhs - kTolerance) {
                monotonicity.passed = false;
                monotonicity.witness = AxiomWitness{w, z, up, lhs, rhs};
            }
        }
        if (translation.passed) {
            numvec z = random_sample(rng, n);
            const double c = rng.uniform(-3.0, 3.0);
            numvec shifted = z;
            for (double& v : shifted) v += c;
            const double lhs = evaluate_risk(spec, dist, shifted);
            const double rhs = evaluate_risk(spec, dist, z) + c;
            if (std::fabs(lhs - rhs) > kTolerance) {
                translation.passed = false;
                translation.witness = AxiomWitness{w, z, {c}, lhs, rhs};
            }
        }
        if (homogeneity.passed) {
            numvec z = random_sample(rng, n);
            const double lambda = rng.uniform(0.0, 3.0);
            numvec scaled = z;
            for (double& v : scaled) v *= lambda;
            const double lhs = evaluate_risk(spec, dist, scaled);
            const double rhs = lambda * evaluate_risk(spec, dist, z);
            if (std::fabs(lhs - rhs) > kTolerance) {
                homogeneity.passed = false;
                homogeneity.witness = AxiomWitness{w, z, {lambda}, lhs, rhs};
            }
        }
        if (convexity.passed) {
            numvec z = random_sample(rng, n);
            numvec u = random_sample(rng, n);
            const double theta = rng.uniform();
            numvec mix(n);
            for (std::size_t i = 0; i < n; ++i)
                mix[i] = theta * z[i] + (1.0 - theta) * u[i];
            const double lhs = evaluate_risk(spec, dist, mix);
            const double rhs = theta * evaluate_risk(spec, dist, z) +
                               (1.0 - theta) * evaluate_risk(spec, dist, u);
            if (lhs > rhs + kTolerance) {
                convexity.passed = false;
                convexity.witness = AxiomWitness{w, z, u, lhs, rhs};
            }
        }
        if (additivity.passed) {
            auto [x, y] = random_comonotone_pair(rng, n);
            numvec sum(n);
            for (std::size_t i = 0; i < n; ++i) sum[i] = x[i] + y[i];
            const double lhs = evaluate_risk(spec, dist, sum);
            const double rhs = evaluate_risk(spec, dist, x) +
                               evaluate_risk(spec, dist, y);
            if (std::fabs(lhs - rhs) > kTolerance) {
                additivity.passed = false;
                additivity.witness = AxiomWitness{w, x, y, lhs, rhs};
            }
        }
    }

    report.checks = {monotonicity, translation, homogeneity, convexity,
                     additivity};
    return report;
}

}  // namespace riskstop
