#include "riskstop/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

#include "riskstop/stochastic_order.hpp"

namespace riskstop {

DiscreteShock::DiscreteShock(numvec atoms_in, FiniteDistribution law_in)
    : atoms(std::move(atoms_in)), law(std::move(law_in)) {
    detail::require(atoms.size() == law.size(),
                    "DiscreteShock: atoms and law differ in size");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        detail::require(std::isfinite(atoms[i]),
                        "DiscreteShock: atom is not finite");
        detail::require(i == 0 || atoms[i - 1] < atoms[i],
                        "DiscreteShock: atoms must be strictly increasing");
    }
}

void TransitionKernel::validate(std::size_t states) const {
    detail::require(!rows.empty(), "TransitionKernel: no time steps");
    for (const auto& per_state : rows) {
        detail::require(per_state.size() == states,
                        "TransitionKernel: row count does not match grid");
        for (const auto& row : per_state)
            detail::require(row.size() == states,
                            "TransitionKernel: row length does not match "
                            "grid");
    }
}

ShockMap dynamics_map(const DynamicsDescriptor& descriptor,
                      const StateGrid& grid) {
    if (descriptor.name == "arf") {
        detail::require(grid.dims() == 2, "arf dynamics need a 2-d grid");
        return [](int t, const numvec& x, double w) {
            const double spot = w * x[1];
            const double avg = (static_cast<double>(t) * x[0] + spot) /
                               (static_cast<double>(t) + 1.0);
            return numvec{avg, spot};
        };
    }
    if (descriptor.name == "affine") {
        detail::require(grid.dims() == 1, "affine dynamics need a scalar grid");
        const double lambda = descriptor.lambda;
        return [lambda](int, const numvec& x, double w) {
            return numvec{lambda * x[0] + w};
        };
    }
    if (descriptor.name == "max_offer") {
        detail::require(grid.dims() == 1,
                        "max_offer dynamics need a scalar grid");
        return [](int, const numvec& x, double w) {
            return numvec{std::max(x[0], w)};
        };
    }
    if (descriptor.name == "index_shift") {
        detail::require(descriptor.shifts.size() == grid.dims(),
                        "index_shift dynamics: one shift row per dimension");
        // Copy what the lambda needs; atom index is recovered by matching
        // the shock value against the per-dimension shift table length.
        std::vector<numvec> axes = grid.axes();
        std::vector<std::vector<long>> shifts = descriptor.shifts;
        return [axes, shifts](int, const numvec& x, double w) {
            numvec out(axes.size());
            for (std::size_t d = 0; d < axes.size(); ++d) {
                const numvec& axis = axes[d];
                std::size_t idx = 0;
                while (idx + 1 < axis.size() && axis[idx] < x[d]) ++idx;
                // The shock value doubles as the atom index for this map.
                const auto k = static_cast<std::size_t>(w);
                detail::require(k < shifts[d].size(),
                                "index_shift dynamics: shock value is not a "
                                "valid atom index");
                const long moved = static_cast<long>(idx) + shifts[d][k];
                const long top = static_cast<long>(axis.size()) - 1;
                out[d] = axis[static_cast<std::size_t>(
                    std::clamp(moved, 0L, top))];
            }
            return out;
        };
    }
    throw std::invalid_argument("dynamics_map: unknown builtin '" +
                                descriptor.name + "'");
}

SharedShockBuild build_shared_shock_kernel(const StateGrid& grid,
                                           const SharedShockDynamics& dynamics,
                                           int horizon,
                                           Projection projection) {
    detail::require(projection == Projection::NearestNeighbor,
                    "build_shared_shock_kernel: unknown projection mode");
    detail::require(horizon >= 1, "build_shared_shock_kernel: horizon < 1");
    detail::require(dynamics.directions.size() == grid.dims(),
                    "build_shared_shock_kernel: one monotone direction per "
                    "dimension required");
    const ShockMap map = dynamics.descriptor.name == "custom"
                             ? dynamics.custom
                             : dynamics_map(dynamics.descriptor, grid);
    detail::require(static_cast<bool>(map),
                    "build_shared_shock_kernel: missing custom evaluator");

    const std::size_t atoms = dynamics.shock.atoms.size();
    SharedShockBuild build;
    build.kernel.rows.resize(static_cast<std::size_t>(horizon));
    constexpr double kSlack = 1e-12;

    for (int t = 0; t < horizon; ++t) {
        auto& per_state = build.kernel.rows[static_cast<std::size_t>(t)];
        per_state.reserve(grid.size());
        for (std::size_t s = 0; s < grid.size(); ++s) {
            const numvec x = grid.point(s);
            std::vector<numvec> images(atoms);
            for (std::size_t k = 0; k < atoms; ++k) {
                images[k] = map(t, x, dynamics.shock.atoms[k]);
                detail::require(images[k].size() == grid.dims(),
                                "build_shared_shock_kernel: map returned "
                                "wrong dimension");
            }
            // Verify the declared monotone directions on the raw images.
            for (std::size_t k = 1; k < atoms; ++k) {
                for (std::size_t d = 0; d < grid.dims(); ++d) {
                    const double step = images[k][d] - images[k - 1][d];
                    const bool ok =
                        dynamics.directions[d] == MonotoneDirection::Increasing
                            ? step >= -kSlack
                            : step <= kSlack;
                    if (!ok) {
                        std::ostringstream msg;
                        msg << "build_shared_shock_kernel: declared "
                            << (dynamics.directions[d] ==
                                        MonotoneDirection::Increasing
                                    ? "increasing"
                                    : "decreasing")
                            << " direction violated at t=" << t
                            << " state=" << s << " dim=" << d << " atoms=("
                            << k - 1 << "," << k << ")";
                        throw std::invalid_argument(msg.str());
                    }
                }
            }
            // Project and accumulate the row.
            numvec weights(grid.size(), 0.0);
            std::vector<numvec> projected(grid.dims(), numvec(atoms));
            for (std::size_t k = 0; k < atoms; ++k) {
                double displacement = 0.0;
                const std::size_t target = grid.project(images[k],
                                                        &displacement);
                build.max_displacement =
                    std::max(build.max_displacement, displacement);
                weights[target] += dynamics.shock.law.weight(k);
                const numvec y = grid.point(target);
                for (std::size_t d = 0; d < grid.dims(); ++d)
                    projected[d][k] = y[d];
            }
            per_state.emplace_back(std::move(weights));
            // Certificate over the projected coordinates.
            if (build.certificate.comonotone) {
                for (std::size_t da = 0;
                     da + 1 < grid.dims() && build.certificate.comonotone;
                     ++da) {
                    for (std::size_t db = da + 1; db < grid.dims(); ++db) {
                        const auto verdict = comonotone_pair_check(
                            projected[da], projected[db]);
                        if (!verdict.comonotone) {
                            build.certificate = {false,       t,  s,
                                                 da,          db, verdict.i,
                                                 verdict.j};
                            break;
                        }
                    }
                }
            }
        }
    }
    return build;
}

TransitionKernel build_tabular_kernel(
    const StateGrid& grid, const std::vector<std::vector<numvec>>& row_tables) {
    detail::require(!row_tables.empty(), "build_tabular_kernel: no time steps");
    TransitionKernel kernel;
    kernel.rows.reserve(row_tables.size());
    for (std::size_t t = 0; t < row_tables.size(); ++t) {
        detail::require(row_tables[t].size() == grid.size(),
                        "build_tabular_kernel: row count mismatch at t=" +
                            std::to_string(t));
        std::vector<FiniteDistribution> per_state;
        per_state.reserve(grid.size());
        for (std::size_t s = 0; s < row_tables[t].size(); ++s) {
            const numvec& probs = row_tables[t][s];
            detail::require(probs.size() == grid.size(),
                            "build_tabular_kernel: row length mismatch at t=" +
                                std::to_string(t) + " state=" +
                                std::to_string(s));
            double sum = 0.0;
            for (double p : probs) {
                detail::require(
                    p >= -FiniteDistribution::kWeightSlack,
                    "build_tabular_kernel: negative probability at t=" +
                        std::to_string(t) + " state=" + std::to_string(s));
                sum += p;
            }
            if (std::fabs(sum - 1.0) >
                FiniteDistribution::kRenormalizeTolerance) {
                std::ostringstream msg;
                msg << "build_tabular_kernel: row is not stochastic at t=" << t
                    << " state=" << s << " (sum=" << sum << ")";
                throw std::invalid_argument(msg.str());
            }
            per_state.emplace_back(probs);
        }
        kernel.rows.push_back(std::move(per_state));
    }
    kernel.validate(grid.size());
    return kernel;
}

void StoppingModel::validate() const {
    detail::require(horizon >= 1, "StoppingModel: horizon must be >= 1");
    kernel.validate(grid.size());
    detail::require(kernel.horizon() == static_cast<std::size_t>(horizon),
                    "StoppingModel: kernel horizon mismatch");
    detail::require(costs.stop.size() == static_cast<std::size_t>(horizon) + 1,
                    "StoppingModel: need stop costs for t = 0..T");
    detail::require(costs.cont.size() == static_cast<std::size_t>(horizon),
                    "StoppingModel: need continue costs for t = 0..T-1");
    for (const numvec& table : costs.stop) {
        detail::require(table.size() == grid.size(),
                        "StoppingModel: stop cost table size mismatch");
        for (double v : table)
            detail::require(std::isfinite(v),
                            "StoppingModel: stop cost is not finite");
    }
    for (const numvec& table : costs.cont) {
        detail::require(table.size() == grid.size(),
                        "StoppingModel: continue cost table size mismatch");
        for (double v : table)
            detail::require(std::isfinite(v),
                            "StoppingModel: continue cost is not finite");
    }
    detail::require(risk.size() == static_cast<std::size_t>(horizon),
                    "StoppingModel: need one risk spec per period");
    for (const RiskSpec& spec : risk) spec.validate();
}

bool StoppingModel::time_homogeneous() const {
    for (std::size_t t = 1; t < kernel.rows.size(); ++t)
        if (!(kernel.rows[t] == kernel.rows[0])) return false;
    for (std::size_t t = 1; t < costs.stop.size(); ++t)
        if (costs.stop[t] != costs.stop[0]) return false;
    for (std::size_t t = 1; t < costs.cont.size(); ++t)
        if (costs.cont[t] != costs.cont[0]) return false;
    for (std::size_t t = 1; t < risk.size(); ++t)
        if (risk[t] != risk[0]) return false;
    return true;
}

namespace {

std::vector<RiskSpec> replicate(const RiskSpec& spec, int horizon) {
    return std::vector<RiskSpec>(static_cast<std::size_t>(horizon), spec);
}

}  // namespace

StoppingModel make_arf_model(const numvec& a, const numvec& b, const numvec& c,
                             double mu, double sigma, std::size_t shock_atoms,
                             std::array<std::size_t, 2> grid_sizes, int horizon,
                             const RiskSpec& risk) {
    detail::require(horizon >= 1, "make_arf_model: horizon must be >= 1");
    const auto tables = static_cast<std::size_t>(horizon) + 1;
    detail::require(a.size() == tables && b.size() == tables &&
                        c.size() == tables,
                    "make_arf_model: coefficient vectors must have length "
                    "T+1");
    for (std::size_t t = 0; t < tables; ++t)
        detail::require(a[t] > 0.0 && b[t] > 0.0,
                        "make_arf_model: payoff coefficients must be "
                        "positive");
    detail::require(sigma >= 0.0, "make_arf_model: sigma must be >= 0");
    detail::require(shock_atoms >= 1, "make_arf_model: need at least one atom");
    detail::require(grid_sizes[0] >= 2 && grid_sizes[1] >= 2,
                    "make_arf_model: need at least two points per axis");

    // Equiprobable atoms at the lognormal quantile midpoints.
    numvec atoms(shock_atoms);
    const boost::math::normal_distribution<double> normal;
    for (std::size_t i = 0; i < shock_atoms; ++i) {
        const double p = (static_cast<double>(i) + 0.5) /
                         static_cast<double>(shock_atoms);
        atoms[i] = std::exp(mu + sigma * boost::math::quantile(normal, p));
    }
    FiniteDistribution law(numvec(shock_atoms, 1.0 /
                                      static_cast<double>(shock_atoms)));

    // Axes span the T-step multiplicative reachable range of the spot,
    // which also bounds the running average.
    double lo = std::pow(std::min(1.0, atoms.front()), horizon);
    double hi = std::pow(std::max(1.0, atoms.back()), horizon);
    if (hi <= lo * (1.0 + 1e-9)) {  // deterministic unit-ish shock
        lo *= 0.5;
        hi = std::max(hi * 1.5, lo * 2.0);
    }
    auto make_axis = [&](std::size_t n) {
        const double ratio = std::pow(hi / lo, 1.0 /
                                          static_cast<double>(n - 1));
        return geomspace(lo, ratio, n);
    };
    StateGrid grid({make_axis(grid_sizes[0]), make_axis(grid_sizes[1])});

    SharedShockDynamics dynamics{
        DiscreteShock(atoms, law),
        {MonotoneDirection::Increasing, MonotoneDirection::Increasing},
        DynamicsDescriptor{"arf", 0.0, {}},
        nullptr};
    SharedShockBuild build = build_shared_shock_kernel(grid, dynamics,
                                                       horizon);

    StoppingModel model;
    model.horizon = horizon;
    model.grid = grid;
    model.kernel = std::move(build.kernel);
    model.costs.stop.resize(tables, numvec(grid.size()));
    for (std::size_t t = 0; t < tables; ++t)
        for (std::size_t s = 0; s < grid.size(); ++s) {
            const numvec x = grid.point(s);
            model.costs.stop[t][s] = -(a[t] * x[0] + b[t] * x[1] + c[t]);
        }
    model.costs.cont.assign(static_cast<std::size_t>(horizon),
                            numvec(grid.size(), 0.0));
    model.risk = replicate(risk, horizon);
    model.dynamics = std::move(dynamics);
    model.certificate = build.certificate;
    model.max_projection_displacement = build.max_displacement;
    model.validate();
    return model;
}

StoppingModel make_deadline_sale_model(double lambda,
                                       const DiscreteShock& shock,
                                       const numvec& grid_axis, int horizon,
                                       const RiskSpec& risk) {
    detail::require(lambda > 1.0,
                    "make_deadline_sale_model: lambda must exceed 1");
    detail::require(horizon >= 1,
                    "make_deadline_sale_model: horizon must be >= 1");
    StateGrid grid({grid_axis});

    SharedShockDynamics dynamics{shock,
                                 {MonotoneDirection::Increasing},
                                 DynamicsDescriptor{"affine", lambda, {}},
                                 nullptr};
    SharedShockBuild build = build_shared_shock_kernel(grid, dynamics,
                                                       horizon);

    StoppingModel model;
    model.horizon = horizon;
    model.grid = grid;
    model.kernel = std::move(build.kernel);
    numvec sell(grid.size());
    for (std::size_t s = 0; s < grid.size(); ++s) sell[s] = -grid.axis(0)[s];
    model.costs.stop.assign(static_cast<std::size_t>(horizon) + 1, sell);
    model.costs.cont.assign(static_cast<std::size_t>(horizon),
                            numvec(grid.size(), 0.0));
    model.risk = replicate(risk, horizon);
    model.dynamics = std::move(dynamics);
    model.certificate = build.certificate;
    model.max_projection_displacement = build.max_displacement;
    model.validate();
    return model;
}

StoppingModel make_asset_sale_model(double r, const DiscreteShock& offers,
                                    const numvec& grid_axis, int horizon,
                                    const RiskSpec& risk) {
    detail::require(r >= 0.0, "make_asset_sale_model: rate must be >= 0");
    detail::require(horizon >= 1,
                    "make_asset_sale_model: horizon must be >= 1");
    for (double w : offers.atoms)
        detail::require(w >= 0.0,
                        "make_asset_sale_model: offers must be nonnegative");
    StateGrid grid({grid_axis});

    SharedShockDynamics dynamics{offers,
                                 {MonotoneDirection::Increasing},
                                 DynamicsDescriptor{"max_offer", 0.0, {}},
                                 nullptr};
    SharedShockBuild build = build_shared_shock_kernel(grid, dynamics,
                                                       horizon);

    StoppingModel model;
    model.horizon = horizon;
    model.grid = grid;
    model.kernel = std::move(build.kernel);
    model.costs.stop.resize(static_cast<std::size_t>(horizon) + 1,
                            numvec(grid.size()));
    for (int t = 0; t <= horizon; ++t) {
        const double growth = std::pow(1.0 + r, horizon - t);
        for (std::size_t s = 0; s < grid.size(); ++s)
            model.costs.stop[static_cast<std::size_t>(t)][s] =
                -grid.axis(0)[s] * growth;
    }
    model.costs.cont.assign(static_cast<std::size_t>(horizon),
                            numvec(grid.size(), 0.0));
    model.risk = replicate(risk, horizon);
    model.dynamics = std::move(dynamics);
    model.certificate = build.certificate;
    model.max_projection_displacement = build.max_displacement;
    model.validate();
    return model;
}

std::pair<CounterexampleScenario, CounterexampleScenario>
make_counterexamples() {
    CounterexampleScenario tower;
    tower.name = "tower";
    tower.pmf = {{-80.0, 100.0, 0.03}, {0.0, 100.0, 0.02}, {0.0, 0.0, 0.95}};
    tower.alpha = 0.05;
    tower.joint_num = 52;
    tower.joint_den = 1;
    tower.nested_num = 4000;
    tower.nested_den = 97;

    CounterexampleScenario subadd;
    subadd.name = "subadditivity";
    subadd.pmf = {{100.0, 0.0, 0.05}, {0.0, 100.0, 0.05}, {0.0, 0.0, 0.90}};
    subadd.alpha = 0.05;
    subadd.joint_num = 100;
    subadd.joint_den = 1;
    subadd.nested_num = 100;
    subadd.nested_den = 1;
    return {tower, subadd};
}

namespace {

FiniteDistribution scenario_law(const CounterexampleScenario& scenario) {
    numvec probs;
    probs.reserve(scenario.pmf.size());
    for (const auto& entry : scenario.pmf) probs.push_back(entry[2]);
    return FiniteDistribution(std::move(probs));
}

}  // namespace

double scenario_joint_cvar(const CounterexampleScenario& scenario) {
    numvec sums;
    sums.reserve(scenario.pmf.size());
    for (const auto& entry : scenario.pmf)
        sums.push_back(entry[0] + entry[1]);
    return cvar(scenario_law(scenario), sums, scenario.alpha);
}

double scenario_marginal_cvar(const CounterexampleScenario& scenario,
                              int which) {
    detail::require(which == 0 || which == 1,
                    "scenario_marginal_cvar: which must be 0 or 1");
    numvec values;
    values.reserve(scenario.pmf.size());
    for (const auto& entry : scenario.pmf)
        values.push_back(entry[static_cast<std::size_t>(which)]);
    return cvar(scenario_law(scenario), values, scenario.alpha);
}

double scenario_nested_cvar(const CounterexampleScenario& scenario) {
    // Group the pmf by the first-period cost, keeping first-appearance
    // order for determinism.
    std::vector<double> levels;
    std::vector<numvec> cond_probs;
    std::vector<numvec> cond_values;
    numvec level_mass;
    for (const auto& entry : scenario.pmf) {
        std::size_t g = levels.size();
        for (std::size_t i = 0; i < levels.size(); ++i)
            if (levels[i] == entry[0]) {
                g = i;
                break;
            }
        if (g == levels.size()) {
            levels.push_back(entry[0]);
            cond_probs.emplace_back();
            cond_values.emplace_back();
            level_mass.push_back(0.0);
        }
        cond_probs[g].push_back(entry[2]);
        cond_values[g].push_back(entry[1]);
        level_mass[g] += entry[2];
    }
    numvec stage_values(levels.size());
    for (std::size_t g = 0; g < levels.size(); ++g) {
        numvec normalized = cond_probs[g];
        for (double& p : normalized) p /= level_mass[g];
        stage_values[g] =
            levels[g] + cvar(FiniteDistribution(std::move(normalized)),
                             cond_values[g], scenario.alpha);
    }
    return cvar(FiniteDistribution(std::move(level_mass)), stage_values,
                scenario.alpha);
}

StoppingModel make_tower_chain_model() {
    const auto [tower, subadd] = make_counterexamples();
    (void)subadd;
    // States are the distinct cost levels of the chain: -80, 0, 100.
    StateGrid grid({numvec{-80.0, 0.0, 100.0}});
    const double p1 = tower.pmf[0][2];             // 0.03 -> state -80
    const double p2 = tower.pmf[1][2];             // 0.02 -> then 100
    const double p3 = tower.pmf[2][2];             // 0.95 -> then 0
    const double stay = p2 + p3;                   // 0.97 -> state 0

    std::vector<std::vector<numvec>> rows(2);
    // t = 0: the chain starts in state 0 (index 1); unreachable rows reuse
    // the start law so every state has a valid row.
    rows[0].assign(3, numvec{p1, stay, 0.0});
    // t = 1: conditional second-period laws.
    rows[1] = {numvec{0.0, 0.0, 1.0},
               numvec{0.0, p3 / stay, p2 / stay},
               numvec{0.0, 0.0, 1.0}};

    StoppingModel model;
    model.horizon = 2;
    model.grid = grid;
    model.kernel = build_tabular_kernel(grid, rows);
    // Stop costs are prohibitive before the deadline so the optimal (and
    // only sensible) policy is to run the chain to the end; the continue
    // cost at t = 1 collects the first-period cost, the terminal cost the
    // second.
    const double blocked = 1e6;
    model.costs.stop = {numvec(3, blocked), numvec(3, blocked),
                        numvec{-80.0, 0.0, 100.0}};
    model.costs.cont = {numvec(3, 0.0), numvec{-80.0, 0.0, 100.0}};
    model.risk = replicate(RiskSpec::cvar(tower.alpha), 2);
    model.validate();
    return model;
}

}  // namespace riskstop
