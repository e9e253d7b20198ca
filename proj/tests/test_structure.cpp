#include <cmath>
#include <limits>

#include <doctest.h>

#include "riskstop/model.hpp"
#include "riskstop/random_models.hpp"
#include "riskstop/solver.hpp"
#include "riskstop/structure.hpp"

using namespace riskstop;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Two-state chain with explicit rows; zero costs unless overridden.
StoppingModel two_state_model(const numvec& row0, const numvec& row1,
                              int horizon = 2) {
    StoppingModel model;
    model.horizon = horizon;
    model.grid = StateGrid({numvec{0.0, 1.0}});
    model.kernel = build_tabular_kernel(
        model.grid, std::vector<std::vector<numvec>>(
                        static_cast<std::size_t>(horizon), {row0, row1}));
    model.costs.stop.assign(static_cast<std::size_t>(horizon) + 1,
                            numvec{0.0, 0.0});
    model.costs.cont.assign(static_cast<std::size_t>(horizon),
                            numvec{0.0, 0.0});
    model.risk.assign(static_cast<std::size_t>(horizon),
                      RiskSpec::expectation());
    model.validate();
    return model;
}

ThresholdTable scalar_table(const std::vector<ThresholdEntry>& per_t) {
    ThresholdTable table;
    table.dim = 0;
    for (const ThresholdEntry& entry : per_t) table.entries.push_back({entry});
    return table;
}

ThresholdEntry boundary(double value,
                        Orientation o = Orientation::StopBelow) {
    return ThresholdEntry{value, o, SliceKind::Boundary};
}

}  // namespace

TEST_CASE("stochastic monotonicity: verdicts and witnesses") {
    // Higher state jumps to the bottom: the rows are ordered the wrong
    // way round.
    const StoppingModel bad =
        two_state_model({0.0, 1.0}, {1.0, 0.0});
    const StructureCheck check = check_stochastic_monotonicity(bad);
    CHECK(check.item == "stochastic-monotonicity");
    CHECK(check.verdict == Verdict::Violated);
    REQUIRE(check.witness.has_value());
    CHECK(check.witness->state < check.witness->other_state);

    const StoppingModel good =
        two_state_model({0.7, 0.3}, {0.2, 0.8});
    CHECK(check_stochastic_monotonicity(good).verdict == Verdict::Holds);

    // Large 2-d supports force the marginal fallback.
    const StoppingModel planar =
        random_monotone_model(3, {5, 5}, 2, RiskSpec::cvar(0.5));
    CHECK(check_stochastic_monotonicity(planar).verdict ==
          Verdict::ApproximateHolds);
}

TEST_CASE("cost monotonicity flags the first increasing pair") {
    StoppingModel model = two_state_model({0.5, 0.5}, {0.5, 0.5});
    CHECK(check_monotone_costs(model).verdict == Verdict::Holds);
    model.costs.stop[1] = numvec{0.0, 0.25};
    const StructureCheck check = check_monotone_costs(model);
    CHECK(check.item == "monotone-costs");
    CHECK(check.verdict == Verdict::Violated);
    REQUIRE(check.witness.has_value());
    CHECK(check.witness->t == 1);
    CHECK(check.witness->lhs == 0.0);
    CHECK(check.witness->rhs == 0.25);
}

TEST_CASE("value monotonicity along selected dimensions") {
    const StateGrid grid({numvec{0.0, 1.0}, numvec{0.0, 1.0}});
    // Decreasing in dim 0, increasing in dim 1.
    std::vector<numvec> values(1, numvec(4));
    values[0][grid.to_flat({0, 0})] = 3.0;
    values[0][grid.to_flat({1, 0})] = 2.0;
    values[0][grid.to_flat({0, 1})] = 4.0;
    values[0][grid.to_flat({1, 1})] = 3.5;
    CHECK(check_value_monotonicity(grid, values, {0}).verdict ==
          Verdict::Holds);
    CHECK(check_value_monotonicity(grid, values, {1}).verdict ==
          Verdict::Violated);
    const StructureCheck all = check_value_monotonicity(grid, values);
    CHECK(all.item == "value-monotonicity");
    CHECK(all.verdict == Verdict::Violated);
    REQUIRE(all.witness.has_value());
    CHECK(all.witness->dim == 1);
}

TEST_CASE("loss monotonicity: strict mode rejects plateaus") {
    const StateGrid grid({numvec{0.0, 1.0, 2.0}});
    const std::vector<numvec> plateau{{1.0, 1.0, 0.5}};
    CHECK(check_loss_monotonicity(grid, plateau).verdict == Verdict::Holds);
    const StructureCheck strict =
        check_loss_monotonicity(grid, plateau, /*strict=*/true);
    CHECK(strict.verdict == Verdict::Violated);
    REQUIRE(strict.witness.has_value());
    CHECK(strict.witness->lhs == 1.0);
    CHECK(strict.witness->rhs == 1.0);
}

TEST_CASE("control limit extraction: orientations, degenerate slices, and "
          "the single-transition rule") {
    const StateGrid grid({numvec{0.0, 1.0, 2.0, 3.0}, numvec{10.0, 20.0}});
    const std::size_t n1 = 4;

    // Stop-below with per-slice boundaries, plus degenerate slices at the
    // second period.
    PolicyTable policy(2, std::vector<Action>(grid.size()));
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
        policy[0][grid.to_flat({i1, 0})] =
            i1 <= 1 ? Action::Stop : Action::Continue;
        policy[0][grid.to_flat({i1, 1})] =
            i1 <= 0 ? Action::Stop : Action::Continue;
        policy[1][grid.to_flat({i1, 0})] = Action::Stop;
        policy[1][grid.to_flat({i1, 1})] = Action::Continue;
    }
    const ControlLimitExtraction extraction =
        extract_control_limits(grid, policy, 0);
    CHECK(extraction.check.item == "control-limit/dim0");
    CHECK(extraction.check.verdict == Verdict::Holds);
    const ThresholdTable& table = extraction.table;
    CHECK(table.dim == 0);
    CHECK(table.other_dims == std::vector<std::size_t>{1});
    CHECK(table.slice_sizes == std::vector<std::size_t>{2});
    CHECK(table.slice_count() == 2);
    CHECK(table.entries[0][0].orientation == Orientation::StopBelow);
    CHECK(table.entries[0][0].kind == SliceKind::Boundary);
    CHECK(table.entries[0][0].value == 1.0);
    CHECK(table.entries[0][1].value == 0.0);
    CHECK(table.entries[1][0].kind == SliceKind::AllStop);
    CHECK(table.entries[1][0].value == kInf);
    CHECK(table.entries[1][1].kind == SliceKind::AllContinue);
    CHECK(table.entries[1][1].value == -kInf);

    // Stop-above: the threshold is the smallest stop coordinate.
    PolicyTable above(1, std::vector<Action>(grid.size()));
    for (std::size_t i1 = 0; i1 < n1; ++i1)
        for (std::size_t i2 = 0; i2 < 2; ++i2)
            above[0][grid.to_flat({i1, i2})] =
                i1 >= 2 ? Action::Stop : Action::Continue;
    const ControlLimitExtraction up = extract_control_limits(grid, above, 0);
    CHECK(up.check.verdict == Verdict::Holds);
    CHECK(up.table.entries[0][0].orientation == Orientation::StopAbove);
    CHECK(up.table.entries[0][0].value == 2.0);

    // Two transitions: violated with a descriptive witness.
    PolicyTable zigzag(1, std::vector<Action>(grid.size(), Action::Stop));
    zigzag[0][grid.to_flat({1, 0})] = Action::Continue;
    const ControlLimitExtraction broken =
        extract_control_limits(grid, zigzag, 0);
    CHECK(broken.check.verdict == Verdict::Violated);
    REQUIRE(broken.check.witness.has_value());
    CHECK(broken.check.witness->description.find("more than once") !=
          std::string::npos);
}

TEST_CASE("threshold time monotonicity respects orientation and "
          "degenerate slices") {
    const StoppingModel homogeneous =
        two_state_model({0.6, 0.4}, {0.1, 0.9}, 3);
    CHECK(homogeneous.time_homogeneous());

    // StopBelow: growing thresholds pass, shrinking ones fail.
    CHECK(check_threshold_time_monotonicity(
              homogeneous,
              scalar_table({boundary(0.0), boundary(0.5), boundary(1.0)}))
              .verdict == Verdict::Holds);
    const StructureCheck shrink = check_threshold_time_monotonicity(
        homogeneous,
        scalar_table({boundary(1.0), boundary(0.5), boundary(0.0)}));
    CHECK(shrink.item == "threshold/time-monotonicity");
    CHECK(shrink.verdict == Verdict::Violated);

    // Degenerate slices re-mapped by the family orientation: no stopping,
    // then a boundary, then stopping everywhere is a growing stop region.
    CHECK(check_threshold_time_monotonicity(
              homogeneous,
              scalar_table({ThresholdEntry{-kInf, Orientation::StopBelow,
                                           SliceKind::AllContinue},
                            boundary(0.5),
                            ThresholdEntry{kInf, Orientation::StopBelow,
                                           SliceKind::AllStop}}))
              .verdict == Verdict::Holds);

    // StopAbove: thresholds must fall instead.
    CHECK(check_threshold_time_monotonicity(
              homogeneous,
              scalar_table({boundary(1.0, Orientation::StopAbove),
                            boundary(0.5, Orientation::StopAbove),
                            ThresholdEntry{kInf, Orientation::StopBelow,
                                           SliceKind::AllStop}}))
              .verdict == Verdict::Holds);

    // Mixed boundary orientations: not applicable.
    CHECK(check_threshold_time_monotonicity(
              homogeneous,
              scalar_table({boundary(0.0), boundary(0.5, Orientation::StopAbove),
                            boundary(1.0)}))
              .verdict == Verdict::NotApplicable);

    // Time-inhomogeneous model: not applicable either.
    StoppingModel varying = two_state_model({0.6, 0.4}, {0.1, 0.9}, 3);
    varying.costs.stop[1][0] = -1.0;
    CHECK(check_threshold_time_monotonicity(
              varying,
              scalar_table({boundary(0.0), boundary(0.5), boundary(1.0)}))
              .verdict == Verdict::NotApplicable);
}

TEST_CASE("threshold cross monotonicity follows the probe coordinate") {
    const StateGrid grid({numvec{0.0, 1.0, 2.0, 3.0}, numvec{0.0, 1.0, 2.0}});
    // Stop iff x0 <= 2 - x1: thresholds fall as the probe grows.
    PolicyTable policy(1, std::vector<Action>(grid.size()));
    for (std::size_t i1 = 0; i1 < 4; ++i1)
        for (std::size_t i2 = 0; i2 < 3; ++i2)
            policy[0][grid.to_flat({i1, i2})] =
                static_cast<double>(i1) <= 2.0 - static_cast<double>(i2)
                    ? Action::Stop
                    : Action::Continue;
    const ControlLimitExtraction extraction =
        extract_control_limits(grid, policy, 0);
    REQUIRE(extraction.check.verdict == Verdict::Holds);
    const StructureCheck cross =
        check_threshold_cross_monotonicity(grid, extraction.table, 1);
    CHECK(cross.item == "threshold/cross-monotonicity");
    CHECK(cross.verdict == Verdict::Holds);

    // Reversed slices: the stop region grows with the probe instead.
    PolicyTable reversed(1, std::vector<Action>(grid.size()));
    for (std::size_t i1 = 0; i1 < 4; ++i1)
        for (std::size_t i2 = 0; i2 < 3; ++i2)
            reversed[0][grid.to_flat({i1, i2})] =
                static_cast<double>(i1) <= static_cast<double>(i2)
                    ? Action::Stop
                    : Action::Continue;
    const ControlLimitExtraction bad =
        extract_control_limits(grid, reversed, 0);
    CHECK(check_threshold_cross_monotonicity(grid, bad.table, 1).verdict ==
          Verdict::Violated);

    // The scanned dimension is not a valid probe.
    CHECK_THROWS_AS(
        check_threshold_cross_monotonicity(grid, extraction.table, 0),
        std::invalid_argument);
}

TEST_CASE("threshold ordering across instances") {
    const ThresholdTable averse =
        scalar_table({boundary(1.0), boundary(2.0)});
    const ThresholdTable relaxed =
        scalar_table({boundary(0.5), boundary(2.0)});
    const StructureCheck ordered =
        check_threshold_instance_ordering(averse, relaxed);
    CHECK(ordered.item == "threshold/risk-aversion-ordering");
    CHECK(ordered.verdict == Verdict::Holds);
    CHECK(check_threshold_instance_ordering(relaxed, averse).verdict ==
          Verdict::Violated);

    // StopAbove flips the comparison: more averse stops on a larger upper
    // region, i.e. from a lower coordinate on.
    const ThresholdTable averse_up =
        scalar_table({boundary(0.5, Orientation::StopAbove)});
    const ThresholdTable relaxed_up =
        scalar_table({boundary(1.5, Orientation::StopAbove)});
    CHECK(check_threshold_instance_ordering(averse_up, relaxed_up).verdict ==
          Verdict::Holds);
    CHECK(check_threshold_instance_ordering(relaxed_up, averse_up).verdict ==
          Verdict::Violated);

    ThresholdTable mismatched = scalar_table({boundary(1.0)});
    CHECK_THROWS_AS(check_threshold_instance_ordering(averse, mismatched),
                    std::invalid_argument);
}

TEST_CASE("one-step conditions hold for the asset sale") {
    const numvec axis{0.4, 0.5, 0.6, 0.7, 0.8, 0.9,
                      1.0, 1.1, 1.2, 1.3, 1.4, 1.5};
    const DiscreteShock offers{numvec{0.6, 0.9, 1.0, 1.2, 1.4},
                               FiniteDistribution(numvec(5, 0.2))};
    const StoppingModel model = make_asset_sale_model(
        0.05, offers, axis, 6, RiskSpec::cvar(0.5));
    const SolveResult solution = solve_dp(model);
    const OneStepConditionsReport report =
        check_one_step_conditions(model, solution);
    CHECK(report.propagation.verdict == Verdict::Holds);
    CHECK(report.monotone_one_step.verdict == Verdict::Holds);
    CHECK(report.sign_stability.verdict == Verdict::Holds);
    CHECK(report.dynamic_ordering.verdict == Verdict::Holds);
    CHECK(report.sign_agreement.verdict == Verdict::Holds);
    CHECK(report.direction == 1);
    CHECK(report.assumptions_hold());
    CHECK(report.all_hold());
    CHECK(report.items().size() == 5);

    // The conclusion in policy form: myopic and optimal policies agree.
    CHECK(one_step_lookahead_policy(model) == solution.policy);
}

TEST_CASE("one-step conditions expose the deadline sale's drift mismatch") {
    numvec axis(31);
    for (std::size_t i = 0; i < axis.size(); ++i)
        axis[i] = 5.0 * static_cast<double>(i);
    const DiscreteShock shock{numvec{-50.0, -45.0, -40.0, -35.0, -30.0},
                              FiniteDistribution(numvec(5, 0.2))};
    const StoppingModel model = make_deadline_sale_model(
        2.0, shock, axis, 4, RiskSpec::expectation());
    const SolveResult solution = solve_dp(model);
    const OneStepConditionsReport report =
        check_one_step_conditions(model, solution);
    // The state drifts upward while the one-step loss falls, and states
    // with a nonnegative loss can reach states with a negative one.
    CHECK(report.propagation.verdict == Verdict::Violated);
    CHECK_FALSE(report.assumptions_hold());
}

TEST_CASE("shift models: exact identity, control limits, and cross "
          "monotonicity") {
    std::size_t boundaries_seen = 0;
    for (std::uint64_t seed : {501, 502, 503}) {
        const StoppingModel model =
            random_shift_model(seed, {4, 4}, 3, RiskSpec::cvar(0.4));
        const SolveResult solution = solve_dp(model);

        // Comonotone additivity turns the loss chain into an identity.
        for (int t = 0; t < model.horizon; ++t)
            for (std::size_t s = 0; s < model.grid.size(); ++s) {
                double slack = 0.0;
                if (t + 1 < model.horizon) {
                    numvec capped(solution.continuation_loss[t + 1]);
                    for (double& v : capped) v = std::min(v, 0.0);
                    slack = evaluate_risk(model.risk[t],
                                          model.kernel.row(t, s), capped);
                }
                CHECK(std::fabs(solution.continuation_loss[t][s] -
                                (solution.one_step_loss[t][s] + slack)) <=
                      1e-10);
            }

        // Decreasing losses yield stop-below control limits in both
        // dimensions, with thresholds falling along the probe dimension.
        for (std::size_t dim = 0; dim < 2; ++dim) {
            const ControlLimitExtraction extraction =
                extract_control_limits(model.grid, solution.policy, dim);
            CHECK(extraction.check.verdict == Verdict::Holds);
            for (const auto& per_t : extraction.table.entries)
                for (const ThresholdEntry& entry : per_t)
                    if (entry.kind == SliceKind::Boundary) {
                        ++boundaries_seen;
                        CHECK(entry.orientation == Orientation::StopBelow);
                    }
            CHECK(check_threshold_cross_monotonicity(
                      model.grid, extraction.table, 1 - dim)
                      .verdict != Verdict::Violated);
            // Growing costs make the model time-inhomogeneous.
            CHECK(check_threshold_time_monotonicity(model, extraction.table)
                      .verdict == Verdict::NotApplicable);
        }
    }
    CHECK(boundaries_seen > 0);
}

TEST_CASE("partial assumption checks validate their block argument") {
    const StoppingModel model =
        random_monotone_model(4, {3, 3}, 2, RiskSpec::cvar(0.5),
                              MonotoneMode::Partial);
    CHECK_THROWS_AS(check_partial_assumptions(model, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_partial_assumptions(model, {0, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_partial_assumptions(model, {2}),
                    std::invalid_argument);
    const StructureReport report = check_partial_assumptions(model, {0});
    CHECK(report.checks.size() == 3);
    CHECK(report.all_hold());
    CHECK(report.find("partial/second-block-marginal") != nullptr);
    CHECK(report.find("nonexistent") == nullptr);

    // A kernel whose second coordinate depends on the first violates the
    // marginal condition.
    StoppingModel coupled = model;
    const StateGrid& grid = coupled.grid;
    std::vector<std::vector<numvec>> rows(
        2, std::vector<numvec>(grid.size(), numvec(grid.size(), 0.0)));
    for (std::size_t t = 0; t < 2; ++t)
        for (std::size_t s = 0; s < grid.size(); ++s) {
            const auto multi = grid.to_multi(s);
            // Next second coordinate equals the current first coordinate.
            rows[t][s][grid.to_flat({multi[0], multi[0]})] = 1.0;
        }
    coupled.kernel = build_tabular_kernel(grid, rows);
    const StructureReport bad = check_partial_assumptions(coupled, {0});
    const StructureCheck* marginal =
        bad.find("partial/second-block-marginal");
    REQUIRE(marginal != nullptr);
    CHECK(marginal->verdict == Verdict::Violated);
}
