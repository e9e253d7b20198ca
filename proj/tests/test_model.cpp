#include <cmath>

#include <doctest.h>

#include "riskstop/model.hpp"
#include "riskstop/model_io.hpp"
#include "riskstop/random_models.hpp"
#include "riskstop/solver.hpp"
#include "riskstop/structure.hpp"

using namespace riskstop;

namespace {

const numvec kAssetAxis{0.4, 0.5, 0.6, 0.7, 0.8, 0.9,
                        1.0, 1.1, 1.2, 1.3, 1.4, 1.5};
const numvec kOffers{0.6, 0.9, 1.0, 1.2, 1.4};

DiscreteShock uniform_offers() {
    return DiscreteShock{kOffers, FiniteDistribution(numvec(5, 0.2))};
}

}  // namespace

TEST_CASE("state grid: indexing and projection") {
    const StateGrid grid({numvec{0.0, 1.0, 2.0}, numvec{10.0, 20.0}});
    CHECK(grid.dims() == 2);
    CHECK(grid.size() == 6);
    for (std::size_t s = 0; s < grid.size(); ++s)
        CHECK(grid.to_flat(grid.to_multi(s)) == s);
    CHECK(grid.point(grid.to_flat({2, 1})) == numvec{2.0, 20.0});

    double displacement = 0.0;
    const std::size_t snapped = grid.project({0.5, 14.0}, &displacement);
    // Ties go to the lower grid point in the first coordinate.
    CHECK(grid.to_multi(snapped)[0] == 0);
    CHECK(grid.to_multi(snapped)[1] == 0);
    CHECK(displacement == doctest::Approx(std::hypot(0.5, 4.0)));

    CHECK_THROWS_AS(StateGrid({numvec{1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(StateGrid({numvec{}}), std::invalid_argument);
}

TEST_CASE("tabular kernel construction rejects bad rows with witnesses") {
    const StateGrid grid({numvec{0.0, 1.0}});
    const std::vector<std::vector<numvec>> good{
        {{0.5, 0.5}, {0.0, 1.0}}};
    CHECK_NOTHROW(build_tabular_kernel(grid, good));

    const std::vector<std::vector<numvec>> bad_sum{
        {{0.5, 0.49}, {0.0, 1.0}}};
    CHECK_THROWS_WITH_AS(build_tabular_kernel(grid, bad_sum),
                         doctest::Contains("sum"), std::invalid_argument);

    const std::vector<std::vector<numvec>> bad_shape{{{0.5, 0.5}}};
    CHECK_THROWS_AS(build_tabular_kernel(grid, bad_shape),
                    std::invalid_argument);
}

TEST_CASE("counterexample scenarios reproduce their headline numbers") {
    const auto [tower, subadd] = make_counterexamples();

    double mass = 0.0;
    for (const auto& [z1, z2, p] : tower.pmf) mass += p;
    CHECK(mass == 1.0);
    mass = 0.0;
    for (const auto& [z1, z2, p] : subadd.pmf) mass += p;
    CHECK(mass == 1.0);

    CHECK(scenario_joint_cvar(tower) == 52.0);
    CHECK(std::fabs(scenario_nested_cvar(tower) - 4000.0 / 97.0) <= 1e-12);
    // The two evaluations genuinely differ: iterating the risk measure is
    // not the same as applying it to the sum.
    CHECK(std::fabs(scenario_joint_cvar(tower) -
                    scenario_nested_cvar(tower)) > 10.0);

    CHECK(scenario_marginal_cvar(subadd, 0) == 100.0);
    CHECK(scenario_marginal_cvar(subadd, 1) == 100.0);
    CHECK(scenario_joint_cvar(subadd) == 100.0);
    CHECK(std::fabs(scenario_nested_cvar(subadd) - 100.0) <= 1e-12);
}

TEST_CASE("tower chain model reproduces the nested evaluation") {
    const StoppingModel chain = make_tower_chain_model();
    chain.validate();
    const SolveResult solution = solve_dp(chain);
    // Stopping early is prohibitive, so the policy continues everywhere.
    for (const auto& stage : solution.policy)
        for (Action a : stage) CHECK(a == Action::Continue);
    // Start at price 0 (middle state): the nested value is 4000/97.
    CHECK(std::fabs(solution.values[0][1] - 4000.0 / 97.0) <= 1e-9);
}

TEST_CASE("deadline-sale: parameter validation and the all-tie limit") {
    const DiscreteShock zero{numvec{0.0}, FiniteDistribution(numvec{1.0})};
    CHECK_THROWS_AS(
        make_deadline_sale_model(1.0, zero, numvec{1.0, 2.0, 3.0}, 2,
                                 RiskSpec::expectation()),
        std::invalid_argument);

    // lambda barely above 1 with a zero shock: every action ties and the
    // tie-break stops everywhere; values equal the stop costs.
    const StoppingModel model = make_deadline_sale_model(
        1.0001, zero, numvec{1.0, 2.0, 3.0}, 3, RiskSpec::cvar(0.5));
    const SolveResult solution = solve_dp(model);
    for (int t = 0; t < model.horizon; ++t)
        for (std::size_t s = 0; s < 3; ++s) {
            CHECK(solution.one_step_loss[t][s] == 0.0);
            CHECK(solution.policy[t][s] == Action::Stop);
            CHECK(solution.values[t][s] == model.stop_cost(t)[s]);
        }
}

TEST_CASE("asset-sale: validation, degenerate stop-everywhere case, and "
          "the one-step loss formula") {
    CHECK_THROWS_AS(make_asset_sale_model(-0.1, uniform_offers(), kAssetAxis,
                                          3, RiskSpec::expectation()),
                    std::invalid_argument);
    const DiscreteShock negative{numvec{-1.0, 1.0},
                                 FiniteDistribution(numvec{0.5, 0.5})};
    CHECK_THROWS_AS(make_asset_sale_model(0.05, negative, kAssetAxis, 3,
                                          RiskSpec::expectation()),
                    std::invalid_argument);

    // r = 0 with a constant offer at the bottom of the grid: M vanishes
    // identically and the tie-break stops at once.
    const DiscreteShock w0{numvec{0.4}, FiniteDistribution(numvec{1.0})};
    const StoppingModel flat = make_asset_sale_model(
        0.0, w0, kAssetAxis, 4, RiskSpec::cvar(0.3));
    const SolveResult flat_solution = solve_dp(flat);
    for (int t = 0; t < flat.horizon; ++t)
        for (std::size_t s = 0; s < kAssetAxis.size(); ++s) {
            CHECK(flat_solution.one_step_loss[t][s] == 0.0);
            CHECK(flat_solution.policy[t][s] == Action::Stop);
        }

    // M_t(x) = (1+r)^(T-t-1) * rho(min{r x, (1+r) x - W}).
    const double r = 0.05;
    const RiskSpec risk = RiskSpec::cvar(0.5);
    const StoppingModel model =
        make_asset_sale_model(r, uniform_offers(), kAssetAxis, 6, risk);
    CHECK(model.max_projection_displacement == 0.0);
    REQUIRE(model.certificate.has_value());
    CHECK(model.certificate->comonotone);
    const SolveResult solution = solve_dp(model);
    for (int t = 0; t < model.horizon; ++t)
        for (std::size_t s = 0; s < kAssetAxis.size(); ++s) {
            const double x = kAssetAxis[s];
            numvec sample(kOffers.size());
            for (std::size_t k = 0; k < kOffers.size(); ++k)
                sample[k] =
                    std::min(r * x, (1.0 + r) * x - kOffers[k]);
            const double expected =
                std::pow(1.0 + r,
                         static_cast<double>(model.horizon - t - 1)) *
                evaluate_risk(risk, uniform_offers().law, sample);
            CHECK(std::fabs(solution.one_step_loss[t][s] - expected) <=
                  1e-12);
        }
}

TEST_CASE("arf model: discretization, certificate, and the coefficient "
          "condition for a decreasing one-step loss") {
    CHECK_THROWS_AS(make_arf_model({1.0, -1.0}, {1.0, 1.0}, {0.0, 0.0}, 0.0,
                                   0.2, 3, {4, 4}, 1,
                                   RiskSpec::expectation()),
                    std::invalid_argument);

    // Quantile-midpoint discretization: strictly increasing equiprobable
    // atoms.
    const numvec ones(4, 1.0), zeros(4, 0.0);
    const StoppingModel generic =
        make_arf_model(ones, ones, zeros, 0.0, 0.2, 5, {6, 6}, 3,
                       RiskSpec::cvar(0.5));
    REQUIRE(generic.dynamics.has_value());
    const DiscreteShock& shock = generic.dynamics->shock;
    REQUIRE(shock.atoms.size() == 5);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(shock.law.weight(k) == doctest::Approx(0.2).epsilon(1e-12));
        if (k > 0) CHECK(shock.atoms[k] > shock.atoms[k - 1]);
    }
    // Lognormal quantile midpoints are symmetric in log for mu = 0.
    CHECK(std::fabs(std::log(shock.atoms[0]) + std::log(shock.atoms[4])) <=
          1e-12);
    REQUIRE(generic.certificate.has_value());
    CHECK(generic.certificate->comonotone);

    // One-atom shock: deterministic dynamics, every row a point mass.
    const StoppingModel deterministic =
        make_arf_model(ones, ones, zeros, 0.1, 0.0, 1, {5, 5}, 3,
                       RiskSpec::expectation());
    for (std::size_t t = 0; t < deterministic.kernel.horizon(); ++t)
        for (std::size_t s = 0; s < deterministic.grid.size(); ++s)
            CHECK(deterministic.kernel.row(t, s).is_point_mass());

    // Coefficient condition: with a_{t+1} >= a_t (t+1)/t and the
    // x2-coefficient negative, M_t is decreasing for t >= 1. Two
    // equiprobable atoms under CVaR(0.5) put all dual mass on the low
    // shock, and a grid ratio matched to the atom ratio makes the spot
    // dynamics cell-exact, so the claim is checkable away from the
    // clamped bottom row.
    const numvec a{1.0, 1.0, 2.5, 4.0};
    const StoppingModel matched = make_arf_model(
        a, a, zeros, 0.0, 0.3, 2, {7, 7}, 3, RiskSpec::cvar(0.5));
    const SolveResult solution = solve_dp(matched);
    const std::size_t n1 = matched.grid.axis(0).size();
    const std::size_t n2 = matched.grid.axis(1).size();
    for (int t = 1; t < matched.horizon; ++t) {
        for (std::size_t i1 = 0; i1 < n1; ++i1)
            for (std::size_t i2 = 1; i2 + 1 < n2; ++i2) {
                const std::size_t lo = matched.grid.to_flat({i1, i2});
                const std::size_t hi = matched.grid.to_flat({i1, i2 + 1});
                CHECK(solution.one_step_loss[t][hi] <=
                      solution.one_step_loss[t][lo] + 1e-10);
            }
    }
}

TEST_CASE("arf model satisfies the product-form assumptions") {
    const numvec ones(4, 1.0), zeros(4, 0.0);
    const StoppingModel model = make_arf_model(
        ones, ones, zeros, 0.0, 0.2, 5, {6, 6}, 3, RiskSpec::cvar(0.5));
    const StructureReport report = check_partial_assumptions(model, {0});
    for (const StructureCheck& check : report.checks) {
        INFO(check.item);
        CHECK(check.ok());
    }
}

TEST_CASE("shared-shock builder: declarations verified, certificate "
          "reports antitone coordinate pairs") {
    const StateGrid grid({numvec{0.0, 1.0, 2.0}, numvec{0.0, 1.0, 2.0}});
    const DiscreteShock shock{numvec{0.0, 1.0},
                              FiniteDistribution(numvec{0.5, 0.5})};

    DynamicsDescriptor descriptor;
    descriptor.name = "index_shift";
    descriptor.shifts = {{0, 1}, {0, -1}};

    // Declaring the second coordinate increasing contradicts the shifts.
    SharedShockDynamics wrong{
        shock,
        {MonotoneDirection::Increasing, MonotoneDirection::Increasing},
        descriptor,
        nullptr};
    CHECK_THROWS_WITH_AS(build_shared_shock_kernel(grid, wrong, 2),
                         doctest::Contains("dim"), std::invalid_argument);

    // Correct declarations build, but the antitone pair fails the
    // comonotonicity certificate with a concrete witness.
    SharedShockDynamics dynamics{
        shock,
        {MonotoneDirection::Increasing, MonotoneDirection::Decreasing},
        descriptor,
        nullptr};
    const SharedShockBuild build =
        build_shared_shock_kernel(grid, dynamics, 2);
    CHECK_FALSE(build.certificate.comonotone);
    CHECK(build.certificate.dim_a == 0);
    CHECK(build.certificate.dim_b == 1);
    CHECK(build.max_displacement == 0.0);

    // Shock-independent dynamics: point-mass rows, trivially comonotone.
    DynamicsDescriptor frozen;
    frozen.name = "index_shift";
    frozen.shifts = {{0, 0}, {0, 0}};
    SharedShockDynamics still{
        shock,
        {MonotoneDirection::Increasing, MonotoneDirection::Increasing},
        frozen,
        nullptr};
    const SharedShockBuild still_build =
        build_shared_shock_kernel(grid, still, 2);
    CHECK(still_build.certificate.comonotone);
    for (std::size_t s = 0; s < grid.size(); ++s)
        CHECK(still_build.kernel.row(0, s).is_point_mass());
}

TEST_CASE("model JSON round-trip is exact") {
    // Tabular kernel.
    const StoppingModel chain = make_tower_chain_model();
    const std::string text = save_model(chain);
    const StoppingModel loaded = parse_model(text);
    CHECK(loaded.horizon == chain.horizon);
    CHECK(loaded.grid == chain.grid);
    CHECK(loaded.kernel == chain.kernel);
    CHECK(loaded.costs == chain.costs);
    CHECK(loaded.risk == chain.risk);
    CHECK(save_model(loaded) == text);

    // Shared-shock kernel: the construction is serialized and rebuilt.
    const StoppingModel asset = make_asset_sale_model(
        0.05, uniform_offers(), kAssetAxis, 4, RiskSpec::cvar(0.1));
    const std::string asset_text = save_model(asset);
    const StoppingModel asset_loaded = parse_model(asset_text);
    CHECK(asset_loaded.kernel == asset.kernel);
    CHECK(asset_loaded.costs == asset.costs);
    REQUIRE(asset_loaded.dynamics.has_value());
    CHECK(asset_loaded.dynamics->descriptor == asset.dynamics->descriptor);
    REQUIRE(asset_loaded.certificate.has_value());
    CHECK(asset_loaded.certificate->comonotone);
    CHECK(save_model(asset_loaded) == asset_text);
}

TEST_CASE("model JSON schema errors are specific") {
    CHECK_THROWS_WITH_AS(parse_model("{"), doctest::Contains("model file"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_model("{\"grid\": [[0,1]]}"),
                         doctest::Contains("horizon"), std::runtime_error);
    const std::string no_kernel = R"({
        "horizon": 1,
        "grid": [[0.0, 1.0]],
        "kernel": {},
        "costs": {"stop": [[0,0],[0,0]], "continue": [[0,0]]},
        "risk": {"kind": "expectation"}
    })";
    CHECK_THROWS_WITH_AS(parse_model(no_kernel),
                         doctest::Contains("kernel"), std::runtime_error);
    const std::string bad_risk = R"({
        "horizon": 1,
        "grid": [[0.0, 1.0]],
        "kernel": {"tabular": [[[0.5, 0.5], [0.0, 1.0]]]},
        "costs": {"stop": [[0,0],[0,0]], "continue": [[0,0]]},
        "risk": {"kind": "entropic"}
    })";
    CHECK_THROWS_WITH_AS(parse_model(bad_risk),
                         doctest::Contains("risk kind"), std::runtime_error);
}

TEST_CASE("risk spec strings parse and round-trip") {
    CHECK(parse_risk_spec("expectation") == RiskSpec::expectation());
    CHECK(parse_risk_spec("cvar:0.5") == RiskSpec::cvar(0.5));
    CHECK(parse_risk_spec("meancvar:0.8:0.2") ==
          RiskSpec::mean_cvar(0.8, 0.2));
    CHECK(parse_risk_spec("meansemidev:0.5") ==
          RiskSpec::mean_semideviation(0.5));
    CHECK_THROWS_AS(parse_risk_spec("var:0.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_risk_spec("cvar"), std::invalid_argument);
    CHECK_THROWS_AS(parse_risk_spec("cvar:abc"), std::invalid_argument);

    const auto uniform = parse_risk_list("cvar:0.5", 3);
    CHECK(uniform.size() == 3);
    CHECK(uniform[2] == RiskSpec::cvar(0.5));
    const auto indexed = parse_risk_list("cvar:0.5,expectation,cvar:0.3", 3);
    CHECK(indexed[1] == RiskSpec::expectation());
    CHECK_THROWS_AS(parse_risk_list("cvar:0.5,expectation", 3),
                    std::invalid_argument);
}

TEST_CASE("random model generators are deterministic in the seed") {
    const std::vector<std::size_t> sizes{4};
    const RiskSpec risk = RiskSpec::cvar(0.4);
    const StoppingModel a = random_monotone_model(7, sizes, 3, risk);
    const StoppingModel b = random_monotone_model(7, sizes, 3, risk);
    CHECK(a.kernel == b.kernel);
    CHECK(a.costs == b.costs);
    const StoppingModel c = random_monotone_model(8, sizes, 3, risk);
    CHECK(a.kernel != c.kernel);

    const StoppingModel s1 = random_shift_model(11, {3, 3}, 3, risk);
    const StoppingModel s2 = random_shift_model(11, {3, 3}, 3, risk);
    CHECK(s1.kernel == s2.kernel);
    CHECK(s1.costs == s2.costs);
}

TEST_CASE("monotone generators satisfy the assumptions they advertise") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const StoppingModel scalar =
            random_monotone_model(seed, {5}, 3, RiskSpec::cvar(0.3));
        CHECK(check_stochastic_monotonicity(scalar).ok());
        CHECK(check_monotone_costs(scalar).ok());

        const StoppingModel planar =
            random_monotone_model(seed, {3, 3}, 2, RiskSpec::cvar(0.3));
        CHECK(check_stochastic_monotonicity(planar).ok());
        CHECK(check_monotone_costs(planar).ok());

        const StoppingModel partial = random_monotone_model(
            seed, {3, 3}, 2, RiskSpec::cvar(0.3), MonotoneMode::Partial);
        const StructureReport report =
            check_partial_assumptions(partial, {0});
        for (const StructureCheck& check : report.checks) {
            INFO("seed ", seed, " ", check.item);
            CHECK(check.ok());
        }
    }
    CHECK_THROWS_AS(random_monotone_model(1, {3}, 2, RiskSpec::cvar(0.3),
                                          MonotoneMode::Partial),
                    std::invalid_argument);
}

TEST_CASE("shift models: exact dynamics and strictly decreasing one-step "
          "loss for every risk kind") {
    const RiskSpec risks[] = {
        RiskSpec::expectation(),
        RiskSpec::cvar(0.5),
        RiskSpec::mean_cvar(0.8, 0.2),
        RiskSpec::mean_semideviation(0.5),
    };
    std::uint64_t seed = 100;
    for (const RiskSpec& risk : risks) {
        for (const auto& sizes :
             {std::vector<std::size_t>{6}, std::vector<std::size_t>{4, 3}}) {
            const StoppingModel model =
                random_shift_model(++seed, sizes, 4, risk);
            CHECK(model.max_projection_displacement == 0.0);
            REQUIRE(model.certificate.has_value());
            CHECK(model.certificate->comonotone);
            const SolveResult solution = solve_dp(model);
            CHECK(check_loss_monotonicity(model.grid,
                                          solution.one_step_loss,
                                          /*strict=*/true)
                      .ok());
            CHECK(check_loss_monotonicity(model.grid,
                                          solution.continuation_loss,
                                          /*strict=*/true)
                      .ok());
            // The cost offsets center the continuation loss, which is
            // exact under comonotone additivity: both actions appear at
            // every period.
            if (!risk.comonotone_additive()) continue;
            for (int t = 0; t < model.horizon; ++t) {
                bool any_stop = false, any_cont = false;
                for (std::size_t s = 0; s < model.grid.size(); ++s) {
                    (solution.policy[t][s] == Action::Stop ? any_stop
                                                           : any_cont) = true;
                }
                CHECK(any_stop);
                CHECK(any_cont);
            }
        }
    }
}
