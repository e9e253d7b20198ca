#include "riskstop/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "riskstop/stochastic_order.hpp"

namespace riskstop {

namespace {

constexpr double kMonotoneTol = 1e-10;
constexpr double kEqualTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Visit every pair of states adjacent along `dim` (lo below hi).
template <typename Fn>
void for_adjacent_pairs(const StateGrid& grid, std::size_t dim, Fn&& fn) {
    for (std::size_t s = 0; s < grid.size(); ++s) {
        auto multi = grid.to_multi(s);
        if (multi[dim] + 1 >= grid.axis(dim).size()) continue;
        ++multi[dim];
        fn(s, grid.to_flat(multi));
    }
}

Witness pair_witness(int t, std::size_t lo, std::size_t hi, std::size_t dim,
                     double lhs, double rhs, std::string description) {
    Witness w;
    w.t = t;
    w.state = lo;
    w.other_state = hi;
    w.dim = dim;
    w.lhs = lhs;
    w.rhs = rhs;
    w.description = std::move(description);
    return w;
}

}  // namespace

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::NotApplicable: return "not-applicable";
        case Verdict::ApproximateHolds: return "approximate-holds";
    }
    return "unknown";
}

std::string to_string(Orientation orientation) {
    return orientation == Orientation::StopBelow ? "stop-below" : "stop-above";
}

bool StructureReport::all_hold() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const StructureCheck& c) { return c.ok(); });
}

const StructureCheck* StructureReport::find(std::string_view item) const {
    for (const StructureCheck& check : checks)
        if (check.item == item) return &check;
    return nullptr;
}

StructureCheck check_stochastic_monotonicity(const StoppingModel& model) {
    model.validate();
    StructureCheck check{"stochastic-monotonicity", Verdict::Holds, {}};
    const OrderSpec order = model.grid.dims() == 1
                                ? OrderSpec::total_scalar()
                                : OrderSpec::componentwise(model.grid.dims());
    const std::vector<numvec> support = model.grid.points();
    bool approximate = false;
    for (int t = 0; t < model.horizon; ++t) {
        for (std::size_t dim = 0; dim < model.grid.dims(); ++dim) {
            bool done = false;
            for_adjacent_pairs(model.grid, dim, [&](std::size_t lo,
                                                    std::size_t hi) {
                if (done) return;
                const FosdResult result =
                    fosd_compare(model.kernel.row(t, hi),
                                 model.kernel.row(t, lo), support, order);
                if (result.verdict != Dominance::ADominatesB &&
                    result.verdict != Dominance::Equal) {
                    check.verdict = Verdict::Violated;
                    check.witness = pair_witness(
                        t, lo, hi, dim, 0.0, 0.0,
                        "row at the higher state fails to dominate the row "
                        "at the lower state (" +
                            to_string(result.verdict) + ")");
                    done = true;
                    return;
                }
                approximate = approximate || result.approximate;
            });
            if (done) return check;
        }
    }
    if (approximate) check.verdict = Verdict::ApproximateHolds;
    return check;
}

StructureCheck check_monotone_costs(const StoppingModel& model) {
    model.validate();
    StructureCheck check{"monotone-costs", Verdict::Holds, {}};
    auto scan = [&](const numvec& table, int t, const char* label) {
        for (std::size_t dim = 0; dim < model.grid.dims(); ++dim) {
            bool done = false;
            for_adjacent_pairs(model.grid, dim, [&](std::size_t lo,
                                                    std::size_t hi) {
                if (done || table[hi] <= table[lo] + kMonotoneTol) return;
                check.verdict = Verdict::Violated;
                check.witness =
                    pair_witness(t, lo, hi, dim, table[lo], table[hi],
                                 std::string(label) + " cost increases "
                                                      "along the state "
                                                      "order");
                done = true;
            });
            if (done) return false;
        }
        return true;
    };
    for (int t = 0; t <= model.horizon; ++t)
        if (!scan(model.stop_cost(t), t, "stop")) return check;
    for (int t = 0; t < model.horizon; ++t)
        if (!scan(model.continue_cost(t), t, "continue")) return check;
    return check;
}

namespace {

// Flatten the coordinates of `multi` restricted to `dims` (row-major).
std::size_t project_index(const std::vector<std::size_t>& multi,
                          const std::vector<std::size_t>& dims,
                          const StateGrid& grid) {
    std::size_t flat = 0;
    for (std::size_t d : dims) flat = flat * grid.axis(d).size() + multi[d];
    return flat;
}

}  // namespace

StructureReport check_partial_assumptions(
    const StoppingModel& model, const std::vector<std::size_t>& first_block) {
    model.validate();
    detail::require(!first_block.empty(),
                    "check_partial_assumptions: first block is empty");
    detail::require(std::is_sorted(first_block.begin(), first_block.end()) &&
                        std::adjacent_find(first_block.begin(),
                                           first_block.end()) ==
                            first_block.end(),
                    "check_partial_assumptions: first block must be sorted "
                    "and duplicate-free");
    for (std::size_t d : first_block)
        detail::require(d < model.grid.dims(),
                        "check_partial_assumptions: dimension out of range");
    std::vector<std::size_t> second_block;
    for (std::size_t d = 0; d < model.grid.dims(); ++d)
        if (!std::binary_search(first_block.begin(), first_block.end(), d))
            second_block.push_back(d);
    detail::require(!second_block.empty(),
                    "check_partial_assumptions: second block is empty");

    StructureReport report;
    report.checks.push_back({"partial/cost-monotonicity", Verdict::Holds, {}});
    report.checks.push_back(
        {"partial/second-block-marginal", Verdict::Holds, {}});
    report.checks.push_back(
        {"partial/conditional-monotonicity", Verdict::Holds, {}});
    StructureCheck& costs = report.checks[0];
    StructureCheck& marginal = report.checks[1];
    StructureCheck& conditional = report.checks[2];

    // Costs nonincreasing along first-block coordinates.
    auto scan_cost = [&](const numvec& table, int t, const char* label) {
        for (std::size_t dim : first_block) {
            bool bad = false;
            for_adjacent_pairs(model.grid, dim, [&](std::size_t lo,
                                                    std::size_t hi) {
                if (bad || table[hi] <= table[lo] + kMonotoneTol) return;
                costs.verdict = Verdict::Violated;
                costs.witness =
                    pair_witness(t, lo, hi, dim, table[lo], table[hi],
                                 std::string(label) +
                                     " cost increases along a first-block "
                                     "coordinate");
                bad = true;
            });
            if (bad) return false;
        }
        return true;
    };
    for (int t = 0; t <= model.horizon && costs.ok(); ++t)
        scan_cost(model.stop_cost(t), t, "stop");
    for (int t = 0; t < model.horizon && costs.ok(); ++t)
        scan_cost(model.continue_cost(t), t, "continue");

    // Second-block marginal independent of the first block, and
    // conditional first-block laws stochastically increasing.
    std::size_t second_size = 1;
    for (std::size_t d : second_block) second_size *= model.grid.axis(d).size();
    std::size_t first_size = 1;
    for (std::size_t d : first_block) first_size *= model.grid.axis(d).size();

    // Per-state second-block marginals and per-outcome conditionals.
    auto marginal_of = [&](const FiniteDistribution& row) {
        numvec m(second_size, 0.0);
        for (std::size_t y = 0; y < row.size(); ++y)
            m[project_index(model.grid.to_multi(y), second_block,
                            model.grid)] += row.weight(y);
        return m;
    };
    // Support of the conditional laws: first-block coordinates.
    std::vector<numvec> first_support(first_size);
    std::vector<std::vector<std::size_t>> fiber(second_size);
    for (std::size_t y = 0; y < model.grid.size(); ++y) {
        const auto multi = model.grid.to_multi(y);
        const std::size_t fi = project_index(multi, first_block, model.grid);
        const std::size_t si = project_index(multi, second_block, model.grid);
        numvec coords;
        for (std::size_t d : first_block)
            coords.push_back(model.grid.axis(d)[multi[d]]);
        first_support[fi] = std::move(coords);
        fiber[si].push_back(y);
    }
    const OrderSpec first_order =
        first_block.size() == 1
            ? OrderSpec::total_scalar()
            : OrderSpec::componentwise(first_block.size());

    bool approximate = false;
    for (int t = 0; t < model.horizon; ++t) {
        for (std::size_t dim : first_block) {
            bool done = false;
            for_adjacent_pairs(model.grid, dim, [&](std::size_t lo,
                                                    std::size_t hi) {
                if (done) return;
                const FiniteDistribution& row_lo = model.kernel.row(t, lo);
                const FiniteDistribution& row_hi = model.kernel.row(t, hi);
                const numvec m_lo = marginal_of(row_lo);
                const numvec m_hi = marginal_of(row_hi);
                for (std::size_t z = 0; z < second_size && marginal.ok();
                     ++z) {
                    if (std::fabs(m_lo[z] - m_hi[z]) > kEqualTol) {
                        marginal.verdict = Verdict::Violated;
                        marginal.witness = pair_witness(
                            t, lo, hi, dim, m_lo[z], m_hi[z],
                            "second-block marginal depends on a first-block "
                            "coordinate");
                    }
                }
                if (!marginal.ok()) {
                    done = true;
                    return;
                }
                for (std::size_t z = 0; z < second_size && conditional.ok();
                     ++z) {
                    if (m_lo[z] <= 0.0) continue;
                    numvec w_lo(first_size, 0.0), w_hi(first_size, 0.0);
                    for (std::size_t y : fiber[z]) {
                        const auto my = model.grid.to_multi(y);
                        const std::size_t fi =
                            project_index(my, first_block, model.grid);
                        w_lo[fi] += row_lo.weight(y) / m_lo[z];
                        w_hi[fi] += row_hi.weight(y) / m_hi[z];
                    }
                    const FosdResult result = fosd_compare(
                        FiniteDistribution(w_hi), FiniteDistribution(w_lo),
                        first_support, first_order);
                    if (result.verdict != Dominance::ADominatesB &&
                        result.verdict != Dominance::Equal) {
                        conditional.verdict = Verdict::Violated;
                        conditional.witness = pair_witness(
                            t, lo, hi, dim, 0.0, 0.0,
                            "conditional first-block law is not "
                            "stochastically increasing (second-block "
                            "outcome " +
                                std::to_string(z) + ")");
                    }
                    approximate = approximate || result.approximate;
                }
                if (!conditional.ok()) done = true;
            });
            if (done) break;
        }
    }
    if (conditional.verdict == Verdict::Holds && approximate)
        conditional.verdict = Verdict::ApproximateHolds;
    return report;
}

StructureCheck check_value_monotonicity(const StateGrid& grid,
                                        const std::vector<numvec>& values,
                                        const std::vector<std::size_t>& dims) {
    StructureCheck check{"value-monotonicity", Verdict::Holds, {}};
    std::vector<std::size_t> scan = dims;
    if (scan.empty())
        for (std::size_t d = 0; d < grid.dims(); ++d) scan.push_back(d);
    for (std::size_t t = 0; t < values.size(); ++t) {
        detail::require(values[t].size() == grid.size(),
                        "check_value_monotonicity: table size mismatch");
        for (std::size_t dim : scan) {
            bool bad = false;
            for_adjacent_pairs(grid, dim, [&](std::size_t lo,
                                              std::size_t hi) {
                if (bad ||
                    values[t][hi] <= values[t][lo] + kMonotoneTol)
                    return;
                check.verdict = Verdict::Violated;
                check.witness = pair_witness(
                    static_cast<int>(t), lo, hi, dim, values[t][lo],
                    values[t][hi], "value increases along the state order");
                bad = true;
            });
            if (bad) return check;
        }
    }
    return check;
}

StructureCheck check_loss_monotonicity(const StateGrid& grid,
                                       const std::vector<numvec>& losses,
                                       bool strict) {
    StructureCheck check{strict ? "loss-monotonicity/strict"
                                : "loss-monotonicity",
                         Verdict::Holds, {}};
    for (std::size_t t = 0; t < losses.size(); ++t) {
        detail::require(losses[t].size() == grid.size(),
                        "check_loss_monotonicity: table size mismatch");
        for (std::size_t dim = 0; dim < grid.dims(); ++dim) {
            bool bad = false;
            for_adjacent_pairs(grid, dim, [&](std::size_t lo,
                                              std::size_t hi) {
                if (bad) return;
                const bool ok = strict
                                    ? losses[t][hi] < losses[t][lo]
                                    : losses[t][hi] <=
                                          losses[t][lo] + kMonotoneTol;
                if (ok) return;
                check.verdict = Verdict::Violated;
                check.witness = pair_witness(
                    static_cast<int>(t), lo, hi, dim, losses[t][lo],
                    losses[t][hi],
                    strict ? "loss fails to decrease strictly"
                           : "loss increases along the state order");
                bad = true;
            });
            if (bad) return check;
        }
    }
    return check;
}

std::size_t ThresholdTable::slice_count() const {
    std::size_t count = 1;
    for (std::size_t n : slice_sizes) count *= n;
    return count;
}

std::vector<std::size_t> ThresholdTable::slice_multi(std::size_t slice) const {
    std::vector<std::size_t> multi(slice_sizes.size(), 0);
    for (std::size_t d = slice_sizes.size(); d-- > 0;) {
        multi[d] = slice % slice_sizes[d];
        slice /= slice_sizes[d];
    }
    return multi;
}

std::size_t ThresholdTable::slice_flat(
    const std::vector<std::size_t>& multi) const {
    std::size_t flat = 0;
    for (std::size_t d = 0; d < slice_sizes.size(); ++d)
        flat = flat * slice_sizes[d] + multi[d];
    return flat;
}

ControlLimitExtraction extract_control_limits(const StateGrid& grid,
                                              const PolicyTable& policy,
                                              std::size_t dim) {
    detail::require(dim < grid.dims(),
                    "extract_control_limits: dimension out of range");
    ControlLimitExtraction out;
    out.check = {"control-limit/dim" + std::to_string(dim), Verdict::Holds,
                 {}};
    out.table.dim = dim;
    for (std::size_t d = 0; d < grid.dims(); ++d) {
        if (d == dim) continue;
        out.table.other_dims.push_back(d);
        out.table.slice_sizes.push_back(grid.axis(d).size());
    }
    const std::size_t slices = out.table.slice_count();
    const std::size_t n = grid.axis(dim).size();
    out.table.entries.assign(policy.size(),
                             std::vector<ThresholdEntry>(slices));

    for (std::size_t t = 0; t < policy.size(); ++t) {
        detail::require(policy[t].size() == grid.size(),
                        "extract_control_limits: policy table size mismatch");
        for (std::size_t slice = 0; slice < slices; ++slice) {
            const auto others = out.table.slice_multi(slice);
            std::vector<std::size_t> multi(grid.dims(), 0);
            for (std::size_t k = 0; k < out.table.other_dims.size(); ++k)
                multi[out.table.other_dims[k]] = others[k];

            std::size_t transitions = 0;
            std::size_t boundary = 0;  // first index after the change
            Action prev = Action::Stop;
            for (std::size_t i = 0; i < n; ++i) {
                multi[dim] = i;
                const Action a = policy[t][grid.to_flat(multi)];
                if (i > 0 && a != prev) {
                    ++transitions;
                    boundary = i;
                    if (transitions > 1) {
                        out.check.verdict = Verdict::Violated;
                        multi[dim] = i;
                        out.check.witness = pair_witness(
                            static_cast<int>(t), grid.to_flat(multi), 0, dim,
                            0.0, 0.0,
                            "policy changes action more than once along the "
                            "scan line");
                        out.table.entries[t][slice] = {
                            std::numeric_limits<double>::quiet_NaN(),
                            Orientation::StopBelow, SliceKind::Boundary};
                        break;
                    }
                }
                prev = a;
            }
            if (transitions > 1) continue;

            multi[dim] = 0;
            const Action first = policy[t][grid.to_flat(multi)];
            ThresholdEntry& entry = out.table.entries[t][slice];
            if (transitions == 0) {
                entry = first == Action::Stop
                            ? ThresholdEntry{kInf, Orientation::StopBelow,
                                             SliceKind::AllStop}
                            : ThresholdEntry{-kInf, Orientation::StopBelow,
                                             SliceKind::AllContinue};
            } else if (first == Action::Stop) {
                // stop on the low side; threshold = largest stop coordinate
                entry = {grid.axis(dim)[boundary - 1], Orientation::StopBelow,
                         SliceKind::Boundary};
            } else {
                // stop on the high side; threshold = smallest stop coordinate
                entry = {grid.axis(dim)[boundary], Orientation::StopAbove,
                         SliceKind::Boundary};
            }
        }
    }
    return out;
}

namespace {

// Family orientation of a threshold table: the orientation of its
// non-degenerate entries, which must agree. Returns nullopt on conflict.
std::optional<Orientation> family_orientation(
    std::initializer_list<const ThresholdTable*> tables) {
    std::optional<Orientation> family;
    for (const ThresholdTable* table : tables)
        for (const auto& per_t : table->entries)
            for (const ThresholdEntry& entry : per_t) {
                if (entry.kind != SliceKind::Boundary) continue;
                if (!family) {
                    family = entry.orientation;
                } else if (*family != entry.orientation) {
                    return std::nullopt;
                }
            }
    if (!family) family = Orientation::StopBelow;  // fully degenerate table
    return family;
}

// Threshold value of an entry viewed under the family orientation; the
// degenerate slices encode empty regions with the sign appropriate for
// that orientation.
double effective_value(const ThresholdEntry& entry, Orientation family) {
    switch (entry.kind) {
        case SliceKind::Boundary:
            return entry.value;
        case SliceKind::AllStop:
            return family == Orientation::StopBelow ? kInf : -kInf;
        case SliceKind::AllContinue:
            return family == Orientation::StopBelow ? -kInf : kInf;
    }
    return entry.value;
}

}  // namespace

StructureCheck check_threshold_time_monotonicity(const StoppingModel& model,
                                                 const ThresholdTable& table) {
    StructureCheck check{"threshold/time-monotonicity", Verdict::Holds, {}};
    if (!model.time_homogeneous()) {
        check.verdict = Verdict::NotApplicable;
        return check;
    }
    const auto family = family_orientation({&table});
    if (!family) {
        check.verdict = Verdict::NotApplicable;
        return check;
    }
    for (std::size_t slice = 0; slice < table.slice_count(); ++slice) {
        for (std::size_t t = 0; t + 1 < table.entries.size(); ++t) {
            const double now =
                effective_value(table.entries[t][slice], *family);
            const double later =
                effective_value(table.entries[t + 1][slice], *family);
            // Stop regions grow with t: StopBelow thresholds rise,
            // StopAbove thresholds fall.
            const bool ok = *family == Orientation::StopBelow
                                ? later >= now - kEqualTol
                                : later <= now + kEqualTol;
            if (!ok) {
                check.verdict = Verdict::Violated;
                check.witness = pair_witness(
                    static_cast<int>(t), slice, slice, table.dim, now, later,
                    "threshold moves against the direction implied by "
                    "growing stop regions");
                return check;
            }
        }
    }
    return check;
}

StructureCheck check_threshold_cross_monotonicity(const StateGrid& grid,
                                                  const ThresholdTable& table,
                                                  std::size_t probe_dim) {
    StructureCheck check{"threshold/cross-monotonicity", Verdict::Holds, {}};
    const auto pos = std::find(table.other_dims.begin(),
                               table.other_dims.end(), probe_dim);
    detail::require(pos != table.other_dims.end(),
                    "check_threshold_cross_monotonicity: probe dimension "
                    "is not a slice dimension");
    const auto p =
        static_cast<std::size_t>(pos - table.other_dims.begin());
    const auto family = family_orientation({&table});
    if (!family) {
        check.verdict = Verdict::NotApplicable;
        return check;
    }
    (void)grid;
    for (std::size_t t = 0; t < table.entries.size(); ++t) {
        for (std::size_t slice = 0; slice < table.slice_count(); ++slice) {
            auto multi = table.slice_multi(slice);
            if (multi[p] + 1 >= table.slice_sizes[p]) continue;
            ++multi[p];
            const std::size_t next = table.slice_flat(multi);
            const double here =
                effective_value(table.entries[t][slice], *family);
            const double there =
                effective_value(table.entries[t][next], *family);
            // Losses fall as the probe coordinate grows, so the stop
            // region shrinks: StopBelow thresholds fall, StopAbove
            // thresholds rise.
            const bool ok = *family == Orientation::StopBelow
                                ? there <= here + kEqualTol
                                : there >= here - kEqualTol;
            if (!ok) {
                check.verdict = Verdict::Violated;
                check.witness = pair_witness(
                    static_cast<int>(t), slice, next, probe_dim, here, there,
                    "threshold moves against the probe coordinate");
                return check;
            }
        }
    }
    return check;
}

StructureCheck check_threshold_instance_ordering(
    const ThresholdTable& more_averse, const ThresholdTable& less_averse) {
    StructureCheck check{"threshold/risk-aversion-ordering", Verdict::Holds,
                         {}};
    detail::require(more_averse.dim == less_averse.dim &&
                        more_averse.slice_sizes == less_averse.slice_sizes &&
                        more_averse.entries.size() ==
                            less_averse.entries.size(),
                    "check_threshold_instance_ordering: table shapes differ");
    const auto family = family_orientation({&more_averse, &less_averse});
    if (!family) {
        check.verdict = Verdict::NotApplicable;
        return check;
    }
    for (std::size_t t = 0; t < more_averse.entries.size(); ++t) {
        for (std::size_t slice = 0; slice < more_averse.slice_count();
             ++slice) {
            const double hi =
                effective_value(more_averse.entries[t][slice], *family);
            const double lo =
                effective_value(less_averse.entries[t][slice], *family);
            // The more risk-averse instance stops on a superset: its
            // StopBelow thresholds are larger, StopAbove smaller.
            const bool ok = *family == Orientation::StopBelow
                                ? hi >= lo - kEqualTol
                                : hi <= lo + kEqualTol;
            if (!ok) {
                check.verdict = Verdict::Violated;
                check.witness = pair_witness(
                    static_cast<int>(t), slice, slice, more_averse.dim, hi,
                    lo,
                    "more risk-averse threshold does not bound the less "
                    "risk-averse one");
                return check;
            }
        }
    }
    return check;
}

bool OneStepConditionsReport::assumptions_hold() const {
    return propagation.ok() && monotone_one_step.ok() &&
           sign_stability.ok() && dynamic_ordering.ok();
}

bool OneStepConditionsReport::all_hold() const {
    return assumptions_hold() && sign_agreement.ok();
}

std::vector<const StructureCheck*> OneStepConditionsReport::items() const {
    return {&propagation, &monotone_one_step, &sign_stability,
            &dynamic_ordering, &sign_agreement};
}

OneStepConditionsReport check_one_step_conditions(const StoppingModel& model,
                                                  const SolveResult& solution) {
    model.validate();
    const auto steps = static_cast<std::size_t>(model.horizon);
    detail::require(solution.one_step_loss.size() == steps &&
                        solution.continuation_loss.size() == steps,
                    "check_one_step_conditions: solution shape mismatch");

    OneStepConditionsReport report;
    report.propagation = {"one-step/propagation", Verdict::Holds, {}};
    report.monotone_one_step = {"one-step/monotone-loss", Verdict::Holds, {}};
    report.sign_stability = {"one-step/sign-stability", Verdict::Holds, {}};
    report.dynamic_ordering = {"one-step/dynamic-ordering", Verdict::Holds,
                               {}};
    report.sign_agreement = {"one-step/sign-agreement", Verdict::Holds, {}};
    const auto& M = solution.one_step_loss;
    const auto& L = solution.continuation_loss;

    // Propagation: a nonnegative one-step loss stays nonnegative on every
    // reachable successor.
    for (std::size_t t = 0; t + 1 < steps && report.propagation.ok(); ++t) {
        for (std::size_t s = 0; s < model.grid.size(); ++s) {
            if (M[t][s] < 0.0) continue;
            const FiniteDistribution& row = model.kernel.row(t, s);
            for (std::size_t y = 0; y < row.size(); ++y) {
                if (row.weight(y) <= 0.0) continue;
                if (M[t + 1][y] < -kMonotoneTol) {
                    report.propagation.verdict = Verdict::Violated;
                    report.propagation.witness = pair_witness(
                        static_cast<int>(t), s, y, 0, M[t][s], M[t + 1][y],
                        "nonnegative one-step loss reaches a negative one");
                    break;
                }
            }
            if (!report.propagation.ok()) break;
        }
    }

    // Monotone one-step loss; detect the direction.
    bool nonincreasing = true, nondecreasing = true;
    std::optional<Witness> up_witness, down_witness;
    for (std::size_t t = 0; t < steps; ++t) {
        for (std::size_t dim = 0; dim < model.grid.dims(); ++dim) {
            for_adjacent_pairs(model.grid, dim, [&](std::size_t lo,
                                                    std::size_t hi) {
                if (M[t][hi] > M[t][lo] + kMonotoneTol && !up_witness) {
                    up_witness = pair_witness(
                        static_cast<int>(t), lo, hi, dim, M[t][lo], M[t][hi],
                        "one-step loss increases along the state order");
                }
                if (M[t][hi] < M[t][lo] - kMonotoneTol && !down_witness) {
                    down_witness = pair_witness(
                        static_cast<int>(t), lo, hi, dim, M[t][lo], M[t][hi],
                        "one-step loss decreases along the state order");
                }
            });
        }
    }
    nonincreasing = !up_witness.has_value();
    nondecreasing = !down_witness.has_value();
    if (nondecreasing && !nonincreasing) {
        report.direction = +1;
    } else if (nonincreasing && !nondecreasing) {
        report.direction = -1;
    } else if (nonincreasing && nondecreasing) {
        report.direction = 0;  // constant loss; either reading works
    } else {
        report.monotone_one_step.verdict = Verdict::Violated;
        report.monotone_one_step.witness = up_witness;
        report.monotone_one_step.witness->description =
            "one-step loss is monotone in neither direction";
    }

    // Statewise sign stability across consecutive periods.
    for (std::size_t t = 0; t + 1 < steps && report.sign_stability.ok();
         ++t) {
        for (std::size_t s = 0; s < model.grid.size(); ++s) {
            if ((M[t][s] >= 0.0) != (M[t + 1][s] >= 0.0)) {
                report.sign_stability.verdict = Verdict::Violated;
                report.sign_stability.witness = pair_witness(
                    static_cast<int>(t), s, s, 0, M[t][s], M[t + 1][s],
                    "one-step loss changes sign between consecutive "
                    "periods");
                break;
            }
        }
    }

    // Dynamics never move against the loss direction.
    auto drift_ok = [&](bool upward, Witness* witness) {
        for (std::size_t t = 0; t < steps; ++t) {
            for (std::size_t s = 0; s < model.grid.size(); ++s) {
                const auto from = model.grid.to_multi(s);
                const FiniteDistribution& row = model.kernel.row(t, s);
                for (std::size_t y = 0; y < row.size(); ++y) {
                    if (row.weight(y) <= 0.0) continue;
                    const auto to = model.grid.to_multi(y);
                    for (std::size_t d = 0; d < from.size(); ++d) {
                        const bool ok = upward ? to[d] >= from[d]
                                               : to[d] <= from[d];
                        if (!ok) {
                            if (witness)
                                *witness = pair_witness(
                                    static_cast<int>(t), s, y, d,
                                    model.grid.axis(d)[from[d]],
                                    model.grid.axis(d)[to[d]],
                                    upward ? "reachable state moves down in "
                                             "a coordinate"
                                           : "reachable state moves up in a "
                                             "coordinate");
                            return false;
                        }
                    }
                }
            }
        }
        return true;
    };
    if (!report.monotone_one_step.ok()) {
        report.dynamic_ordering.verdict = Verdict::NotApplicable;
    } else if (report.direction == +1) {
        Witness w;
        if (!drift_ok(true, &w)) {
            report.dynamic_ordering.verdict = Verdict::Violated;
            report.dynamic_ordering.witness = w;
        }
    } else if (report.direction == -1) {
        Witness w;
        if (!drift_ok(false, &w)) {
            report.dynamic_ordering.verdict = Verdict::Violated;
            report.dynamic_ordering.witness = w;
        }
    } else {
        Witness w;
        if (!drift_ok(true, nullptr) && !drift_ok(false, &w)) {
            report.dynamic_ordering.verdict = Verdict::Violated;
            report.dynamic_ordering.witness = w;
        }
    }

    // Conclusion: one-step and continuation losses agree in sign.
    for (std::size_t t = 0; t < steps && report.sign_agreement.ok(); ++t) {
        for (std::size_t s = 0; s < model.grid.size(); ++s) {
            if ((M[t][s] >= 0.0) != (L[t][s] >= 0.0)) {
                report.sign_agreement.verdict = Verdict::Violated;
                report.sign_agreement.witness = pair_witness(
                    static_cast<int>(t), s, s, 0, M[t][s], L[t][s],
                    "one-step and continuation losses disagree in sign");
                break;
            }
        }
    }
    return report;
}

}  // namespace riskstop
