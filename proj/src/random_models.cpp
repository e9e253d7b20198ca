#include "riskstop/random_models.hpp"

#include <algorithm>
#include <cmath>

namespace riskstop {

namespace {

numvec random_axis(Rng& rng, std::size_t count) {
    numvec axis(count);
    double x = rng.uniform(-1.0, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        axis[i] = x;
        x += rng.uniform(0.1, 1.0);
    }
    return axis;
}

// Scalar stochastically monotone kernel: successive rows have pointwise
// smaller CDFs, so higher states dominate lower ones in distribution.
std::vector<numvec> monotone_scalar_rows(Rng& rng, std::size_t n) {
    std::vector<numvec> rows(n, numvec(n));
    numvec floor_cdf(n, 1.0);
    for (std::size_t s = 0; s < n; ++s) {
        numvec raw(n);
        double sum = 0.0;
        for (double& w : raw) {
            w = rng.uniform(0.05, 1.0);
            sum += w;
        }
        numvec cdf(n);
        double cum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cum += raw[i] / sum;
            cdf[i] = std::min(cum, floor_cdf[i]);
        }
        cdf[n - 1] = 1.0;
        double prev = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rows[s][i] = cdf[i] - prev;
            prev = cdf[i];
        }
        floor_cdf = cdf;
    }
    return rows;
}

// Nonincreasing random sequence used for cost tables.
numvec decreasing_sequence(Rng& rng, std::size_t n, double start_lo,
                           double start_hi, double step_lo, double step_hi) {
    numvec out(n);
    double x = rng.uniform(start_lo, start_hi);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = x;
        x -= rng.uniform(step_lo, step_hi);
    }
    return out;
}

}  // namespace

StoppingModel random_monotone_model(std::uint64_t seed,
                                    const std::vector<std::size_t>& sizes,
                                    int horizon, const RiskSpec& risk,
                                    MonotoneMode mode) {
    detail::require(!sizes.empty(), "random_monotone_model: need dimensions");
    detail::require(horizon >= 1, "random_monotone_model: horizon must be >=1");
    for (std::size_t n : sizes)
        detail::require(n >= 2,
                        "random_monotone_model: need >=2 points per axis");
    detail::require(mode == MonotoneMode::Joint || sizes.size() == 2,
                    "random_monotone_model: partial mode needs two "
                    "dimensions");
    Rng rng(seed);

    std::vector<numvec> axes;
    axes.reserve(sizes.size());
    for (std::size_t n : sizes) axes.push_back(random_axis(rng, n));
    StateGrid grid(axes);

    std::vector<numvec> rows(grid.size(), numvec(grid.size()));
    numvec stop_table(grid.size(), 0.0);
    numvec cont_table(grid.size(), 0.0);
    if (mode == MonotoneMode::Joint) {
        // Product of monotone scalar kernels, one per dimension.
        std::vector<std::vector<numvec>> marginals;
        marginals.reserve(sizes.size());
        for (std::size_t n : sizes)
            marginals.push_back(monotone_scalar_rows(rng, n));
        for (std::size_t s = 0; s < grid.size(); ++s) {
            const auto from = grid.to_multi(s);
            for (std::size_t y = 0; y < grid.size(); ++y) {
                const auto to = grid.to_multi(y);
                double w = 1.0;
                for (std::size_t d = 0; d < sizes.size(); ++d)
                    w *= marginals[d][from[d]][to[d]];
                rows[s][y] = w;
            }
        }
        // Separable costs, nonincreasing in every coordinate.
        auto separable = [&](numvec& table, double start_lo, double start_hi,
                             double step_lo, double step_hi) {
            std::vector<numvec> per_dim;
            per_dim.reserve(sizes.size());
            for (std::size_t n : sizes)
                per_dim.push_back(decreasing_sequence(
                    rng, n, start_lo, start_hi, step_lo, step_hi));
            for (std::size_t s = 0; s < grid.size(); ++s) {
                const auto multi = grid.to_multi(s);
                for (std::size_t d = 0; d < sizes.size(); ++d)
                    table[s] += per_dim[d][multi[d]];
            }
        };
        separable(stop_table, 0.0, 1.0, 0.05, 0.5);
        separable(cont_table, 0.0, 0.2, 0.01, 0.1);
    } else {
        const std::size_t n1 = sizes[0];
        const std::size_t n2 = sizes[1];
        // Second-coordinate marginal: arbitrary rows indexed by x2 only.
        std::vector<numvec> marginal2(n2, numvec(n2));
        for (auto& row : marginal2) {
            double sum = 0.0;
            for (double& w : row) {
                w = rng.uniform(0.05, 1.0);
                sum += w;
            }
            for (double& w : row) w /= sum;
        }
        // Conditional first-coordinate kernels: one monotone scalar kernel
        // per realized second coordinate.
        std::vector<std::vector<numvec>> conditional1;
        conditional1.reserve(n2);
        for (std::size_t y2 = 0; y2 < n2; ++y2)
            conditional1.push_back(monotone_scalar_rows(rng, n1));
        for (std::size_t s = 0; s < grid.size(); ++s) {
            const auto from = grid.to_multi(s);
            for (std::size_t y = 0; y < grid.size(); ++y) {
                const auto to = grid.to_multi(y);
                rows[s][y] = marginal2[from[1]][to[1]] *
                             conditional1[to[1]][from[0]][to[0]];
            }
        }
        // Costs nonincreasing in the first coordinate for each fixed
        // second coordinate, unrelated across second coordinates.
        auto partial_costs = [&](numvec& table, double start_hi,
                                 double step_hi) {
            for (std::size_t x2 = 0; x2 < n2; ++x2) {
                const numvec column = decreasing_sequence(
                    rng, n1, 0.0, start_hi, 0.05, step_hi);
                for (std::size_t x1 = 0; x1 < n1; ++x1)
                    table[grid.to_flat({x1, x2})] = column[x1];
            }
        };
        partial_costs(stop_table, 1.0, 0.5);
        partial_costs(cont_table, 0.2, 0.1);
    }

    StoppingModel model;
    model.horizon = horizon;
    model.grid = grid;
    model.kernel = build_tabular_kernel(
        grid,
        std::vector<std::vector<numvec>>(static_cast<std::size_t>(horizon),
                                         rows));
    model.costs.stop.assign(static_cast<std::size_t>(horizon) + 1, stop_table);
    model.costs.cont.assign(static_cast<std::size_t>(horizon), cont_table);
    model.risk.assign(static_cast<std::size_t>(horizon), risk);
    model.validate();
    return model;
}

StoppingModel random_dense_model(std::uint64_t seed, std::size_t states,
                                 int horizon, const RiskSpec& risk) {
    detail::require(states >= 2, "random_dense_model: need >=2 states");
    detail::require(horizon >= 1, "random_dense_model: horizon must be >= 1");
    Rng rng(seed);
    StateGrid grid({random_axis(rng, states)});

    std::vector<std::vector<numvec>> tables(static_cast<std::size_t>(horizon));
    for (auto& per_state : tables) {
        per_state.resize(states, numvec(states));
        for (auto& row : per_state) {
            double sum = 0.0;
            for (double& w : row) {
                w = rng.uniform(0.01, 1.0);
                sum += w;
            }
            for (double& w : row) w /= sum;
        }
    }
    auto random_table = [&]() {
        numvec table(states);
        for (double& v : table) v = rng.uniform(-1.0, 1.0);
        return table;
    };

    StoppingModel model;
    model.horizon = horizon;
    model.grid = grid;
    model.kernel = build_tabular_kernel(grid, tables);
    model.costs.stop.reserve(static_cast<std::size_t>(horizon) + 1);
    for (int t = 0; t <= horizon; ++t)
        model.costs.stop.push_back(random_table());
    model.costs.cont.reserve(static_cast<std::size_t>(horizon));
    for (int t = 0; t < horizon; ++t)
        model.costs.cont.push_back(random_table());
    model.risk.assign(static_cast<std::size_t>(horizon), risk);
    model.validate();
    return model;
}

double min_safe_growth(const RiskSpec& risk, double stay_probability) {
    detail::require(stay_probability > 0.0 && stay_probability < 1.0,
                    "min_safe_growth: stay probability must lie in (0,1)");
    risk.validate();
    const double p0 = stay_probability;
    double weight = 0.0;  // guaranteed risk-adjusted mass of the stay atom
    switch (risk.kind) {
        case RiskKind::Expectation:
            weight = p0;
            break;
        case RiskKind::CVaR:
            weight = std::min(p0, risk.alpha) / risk.alpha;
            break;
        case RiskKind::MeanCVaR:
            weight = (1.0 - risk.kappa) * p0 +
                     risk.kappa * std::min(1.0, p0 / risk.gamma);
            break;
        case RiskKind::MeanSemideviation:
            detail::require(risk.kappa < 1.0,
                            "min_safe_growth: semideviation weight must be "
                            "< 1 for a strict bound");
            weight = (1.0 - risk.kappa) * p0;
            break;
    }
    return 1.05 / weight;
}

StoppingModel random_shift_model(std::uint64_t seed,
                                 const std::vector<std::size_t>& sizes,
                                 int horizon, const RiskSpec& risk,
                                 const ShiftModelOptions& options) {
    detail::require(!sizes.empty(), "random_shift_model: need dimensions");
    detail::require(horizon >= 1, "random_shift_model: horizon must be >= 1");
    for (std::size_t n : sizes)
        detail::require(n >= 2, "random_shift_model: need >=2 points per axis");
    detail::require(options.atom_count >= 2,
                    "random_shift_model: need >=2 shock atoms");
    const double p0 = options.stay_probability;
    Rng rng(seed);

    std::vector<numvec> axes;
    axes.reserve(sizes.size());
    for (std::size_t n : sizes)
        axes.push_back(
            geomspace(rng.uniform(0.5, 2.0), rng.uniform(1.10, 1.30), n));
    StateGrid grid(axes);

    // Shock atoms are their own indices; the law gives the stay atom the
    // requested mass and spreads the rest randomly.
    const std::size_t atom_count = options.atom_count;
    numvec atoms(atom_count);
    for (std::size_t k = 0; k < atom_count; ++k)
        atoms[k] = static_cast<double>(k);
    numvec law(atom_count);
    law[0] = p0;
    double rest = 0.0;
    for (std::size_t k = 1; k < atom_count; ++k) {
        law[k] = rng.uniform(0.2, 1.0);
        rest += law[k];
    }
    for (std::size_t k = 1; k < atom_count; ++k)
        law[k] *= (1.0 - p0) / rest;

    std::vector<std::vector<long>> shifts(sizes.size(),
                                          std::vector<long>(atom_count, 0));
    for (std::size_t d = 0; d < sizes.size(); ++d) {
        long m = 0;
        const long cap = static_cast<long>(sizes[d]) - 1;
        for (std::size_t k = 1; k < atom_count; ++k) {
            m += 1 + (rng.uniform() < 0.3 ? 1 : 0);
            shifts[d][k] = std::min(m, cap);
        }
    }

    SharedShockDynamics dynamics{
        DiscreteShock(atoms, FiniteDistribution(law)),
        std::vector<MonotoneDirection>(sizes.size(),
                                       MonotoneDirection::Increasing),
        DynamicsDescriptor{"index_shift", 0.0, shifts},
        nullptr};
    SharedShockBuild build = build_shared_shock_kernel(grid, dynamics,
                                                       horizon);

    // Linear state score with positive weights.
    numvec coeff(sizes.size());
    for (double& a : coeff) a = rng.uniform(0.5, 2.0);
    numvec score(grid.size(), 0.0);
    for (std::size_t s = 0; s < grid.size(); ++s) {
        const numvec x = grid.point(s);
        for (std::size_t d = 0; d < sizes.size(); ++d)
            score[s] += coeff[d] * x[d];
    }

    const double ratio = options.growth > 0.0
                             ? options.growth
                             : min_safe_growth(risk, p0);
    const auto steps = static_cast<std::size_t>(horizon);
    std::vector<numvec> stop_raw(steps + 1, numvec(grid.size()));
    double beta = 1.0;
    for (std::size_t t = 0; t <= steps; ++t) {
        for (std::size_t s = 0; s < grid.size(); ++s)
            stop_raw[t][s] = -beta * score[s];
        beta *= ratio;
    }

    // Backward pass: pick per-period offsets so the stopping loss changes
    // sign inside the grid at every period.
    numvec offset_step(steps, 0.0);
    numvec next_loss;  // L_{t+1} over the grid
    for (std::size_t t = steps; t-- > 0;) {
        numvec base(grid.size());
        for (std::size_t s = 0; s < grid.size(); ++s) {
            const FiniteDistribution& row = build.kernel.row(t, s);
            double value = evaluate_risk(risk, row, stop_raw[t + 1]) -
                           stop_raw[t][s];
            if (!next_loss.empty()) {
                numvec capped(next_loss);
                for (double& v : capped) v = std::min(v, 0.0);
                value += evaluate_risk(risk, row, capped);
            }
            base[s] = value;
        }
        const auto [lo, hi] = std::minmax_element(base.begin(), base.end());
        offset_step[t] = -0.5 * (*lo + *hi);
        for (double& v : base) v += offset_step[t];
        next_loss = std::move(base);
    }

    StoppingModel model;
    model.horizon = horizon;
    model.grid = grid;
    model.kernel = std::move(build.kernel);
    model.costs.stop.resize(steps + 1);
    double eta = 0.0;
    for (std::size_t t = 0; t <= steps; ++t) {
        model.costs.stop[t] = stop_raw[t];
        for (double& v : model.costs.stop[t]) v += eta;
        if (t < steps) eta += offset_step[t];
    }
    model.costs.cont.assign(steps, numvec(grid.size(), 0.0));
    model.risk.assign(steps, risk);
    model.dynamics = std::move(dynamics);
    model.certificate = build.certificate;
    model.max_projection_displacement = build.max_displacement;
    model.validate();
    return model;
}

}  // namespace riskstop
