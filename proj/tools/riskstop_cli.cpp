// Command-line front end: load or construct stopping models, solve them,
// run structure checks, reproduce the counterexample scenarios and worked
// examples, compare risk-aversion levels, and certify the solver against
// the brute-force oracle. All outputs are deterministic functions of the
// configuration and seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "riskstop/model.hpp"
#include "riskstop/model_io.hpp"
#include "riskstop/oracle.hpp"
#include "riskstop/random_models.hpp"
#include "riskstop/report_io.hpp"
#include "riskstop/risk.hpp"
#include "riskstop/solver.hpp"
#include "riskstop/structure.hpp"

namespace {

using namespace riskstop;

struct CommonOptions {
    std::string model_file;
    std::string builtin;
    std::vector<std::string> params;
    std::string risk_text;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    std::string format = "csv";
};

std::map<std::string, double> parse_params(
    const std::vector<std::string>& entries) {
    std::map<std::string, double> params;
    for (const std::string& entry : entries) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("--params expects K=V, got '" +
                                        entry + "'");
        const std::string key = entry.substr(0, eq);
        const std::string value = entry.substr(eq + 1);
        std::size_t used = 0;
        params[key] = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument("--params " + key +
                                        ": bad number '" + value + "'");
    }
    return params;
}

double param(const std::map<std::string, double>& params,
             const std::string& key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::size_t param_count(const std::map<std::string, double>& params,
                        const std::string& key, std::size_t fallback) {
    const double v = param(params, key, static_cast<double>(fallback));
    if (v < 0 || v != std::floor(v))
        throw std::invalid_argument("--params " + key +
                                    " must be a nonnegative integer");
    return static_cast<std::size_t>(v);
}

numvec linspace_vec(double lo, double hi, std::size_t n) {
    numvec out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) /
                          static_cast<double>(n - 1);
    return out;
}

StoppingModel build_builtin(const std::string& name,
                            const std::map<std::string, double>& params,
                            std::uint64_t seed) {
    const RiskSpec default_risk = RiskSpec::expectation();
    if (name == "tower-chain") return make_tower_chain_model();
    if (name == "deadline-sale") {
        const double lambda = param(params, "lambda", 1.1);
        const int horizon = static_cast<int>(param(params, "horizon", 5));
        const std::size_t atoms = param_count(params, "atoms", 5);
        const std::size_t grid_n = param_count(params, "grid", 12);
        const double wlow = param(params, "wlow", -2.0);
        const double whigh = param(params, "whigh", 2.0);
        const double base = param(params, "base", 100.0);
        DiscreteShock shock{linspace_vec(wlow, whigh, atoms),
                            FiniteDistribution(numvec(
                                atoms, 1.0 / static_cast<double>(atoms)))};
        // Geometric axis with ratio lambda: the drift maps each grid point
        // onto the next one, so projection only acts at the clamped top and
        // the policy keeps its single-threshold shape.
        numvec axis(grid_n);
        for (std::size_t i = 0; i < grid_n; ++i)
            axis[i] = base * std::pow(lambda, static_cast<double>(i));
        return make_deadline_sale_model(lambda, shock, axis, horizon,
                                        default_risk);
    }
    if (name == "asset-sale") {
        const double r = param(params, "r", 0.05);
        const int horizon = static_cast<int>(param(params, "horizon", 6));
        // Offers sit exactly on the grid so max(x, W) is projection-exact;
        // spelled as literals because accumulated linspace steps drift off
        // the offer values in the last bits.
        const numvec axis{0.4, 0.5, 0.6, 0.7, 0.8, 0.9,
                          1.0, 1.1, 1.2, 1.3, 1.4, 1.5};
        const numvec offers{0.6, 0.9, 1.0, 1.2, 1.4};
        DiscreteShock shock{offers, FiniteDistribution(numvec(5, 0.2))};
        return make_asset_sale_model(r, shock, axis, horizon, default_risk);
    }
    if (name == "arf") {
        const int horizon = static_cast<int>(param(params, "horizon", 3));
        const std::size_t atoms = param_count(params, "atoms", 5);
        const std::size_t g1 = param_count(params, "grid1", 6);
        const std::size_t g2 = param_count(params, "grid2", 6);
        const auto tables = static_cast<std::size_t>(horizon) + 1;
        const numvec a(tables, param(params, "a", 1.0));
        const numvec b(tables, param(params, "b", 1.0));
        const numvec c(tables, param(params, "c", 0.0));
        return make_arf_model(a, b, c, param(params, "mu", 0.0),
                              param(params, "sigma", 0.2), atoms, {g1, g2},
                              horizon, default_risk);
    }
    if (name == "random-monotone") {
        const int horizon = static_cast<int>(param(params, "horizon", 3));
        const std::size_t size = param_count(params, "size", 4);
        const std::size_t dims = param_count(params, "dims", 1);
        const bool partial = param(params, "partial", 0) != 0;
        std::vector<std::size_t> sizes(partial ? 2 : dims, size);
        return random_monotone_model(
            seed, sizes, horizon, RiskSpec::cvar(0.5),
            partial ? MonotoneMode::Partial : MonotoneMode::Joint);
    }
    if (name == "random-shift") {
        const int horizon = static_cast<int>(param(params, "horizon", 3));
        const std::size_t size = param_count(params, "size", 5);
        const std::size_t dims = param_count(params, "dims", 1);
        return random_shift_model(seed, std::vector<std::size_t>(dims, size),
                                  horizon, RiskSpec::cvar(0.5));
    }
    if (name == "random-dense") {
        const int horizon = static_cast<int>(param(params, "horizon", 3));
        const std::size_t size = param_count(params, "size", 4);
        return random_dense_model(seed, size, horizon, RiskSpec::cvar(0.5));
    }
    throw std::invalid_argument(
        "unknown builtin '" + name +
        "' (try: tower-chain, deadline-sale, asset-sale, arf, "
        "random-monotone, random-shift, random-dense)");
}

StoppingModel load_source(const CommonOptions& opt) {
    const bool has_file = !opt.model_file.empty();
    const bool has_builtin = !opt.builtin.empty();
    if (has_file == has_builtin)
        throw std::invalid_argument(
            "exactly one of --model FILE or --builtin NAME is required");
    StoppingModel model =
        has_file ? load_model_file(opt.model_file)
                 : build_builtin(opt.builtin, parse_params(opt.params),
                                 opt.seed);
    if (!opt.risk_text.empty())
        model.risk = parse_risk_list(opt.risk_text, model.horizon);
    model.validate();
    return model;
}

std::string risk_description(const StoppingModel& model) {
    std::ostringstream out;
    for (std::size_t t = 0; t < model.risk.size(); ++t) {
        if (t > 0) out << ',';
        out << model.risk[t].describe();
    }
    return out.str();
}

void write_file(const std::filesystem::path& path,
                const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " +
                                 path.string());
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

nlohmann::ordered_json table_json(const StateGrid& grid,
                                  const std::vector<numvec>& tables,
                                  const std::string& prefix) {
    nlohmann::ordered_json j;
    j["prefix"] = prefix;
    j["grid"] = grid.axes();
    j["tables"] = tables;
    return j;
}

// Emit a per-state table in the selected format; returns the file name.
std::string emit_values(const std::filesystem::path& dir,
                        const std::string& stem, const StateGrid& grid,
                        const std::vector<numvec>& tables,
                        const std::string& prefix,
                        const std::string& format) {
    if (format == "json") {
        const std::string name = stem + ".json";
        write_file(dir / name, table_json(grid, tables, prefix).dump(2) +
                                   "\n");
        return name;
    }
    const std::string name = stem + ".csv";
    write_file(dir / name, values_csv(grid, tables, prefix));
    return name;
}

void add_check(RunSummary& summary, const StructureCheck& check) {
    SummaryVerdict v;
    v.item = check.item;
    v.verdict = to_string(check.verdict);
    if (check.witness) v.note = check.witness->description;
    summary.verdicts.push_back(std::move(v));
}

void add_flag(RunSummary& summary, const std::string& item, bool holds,
              const std::string& note = "") {
    summary.verdicts.push_back(
        {item, holds ? "holds" : "violated", note});
}

int finish(const RunSummary& summary, const std::filesystem::path& dir,
           bool extra_failure = false) {
    write_file(dir / "summary.json", summary_json(summary));
    bool violated = extra_failure;
    for (const SummaryVerdict& v : summary.verdicts) {
        std::cout << v.item << ": " << v.verdict;
        if (!v.note.empty()) std::cout << "  (" << v.note << ")";
        std::cout << '\n';
        violated = violated || v.verdict == "violated";
    }
    for (const HeadlineValue& h : summary.headline_values) {
        std::cout << h.name << " = " << format_double(h.value);
        if (!h.exact.empty()) std::cout << " (exact " << h.exact << ")";
        std::cout << '\n';
    }
    std::cout << "summary: " << (dir / "summary.json").string() << '\n';
    return violated ? 1 : 0;
}

std::filesystem::path prepare_out(const CommonOptions& opt) {
    std::filesystem::path dir(opt.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

void describe_inputs(RunSummary& summary, const CommonOptions& opt,
                     const StoppingModel& model) {
    if (!opt.model_file.empty()) summary.inputs.push_back({"model", opt.model_file});
    if (!opt.builtin.empty()) summary.inputs.push_back({"builtin", opt.builtin});
    for (const std::string& p : opt.params)
        summary.inputs.push_back({"param", p});
    summary.inputs.push_back({"risk", risk_description(model)});
    summary.inputs.push_back({"seed", std::to_string(opt.seed)});
    summary.inputs.push_back({"horizon", std::to_string(model.horizon)});
    summary.inputs.push_back({"states", std::to_string(model.grid.size())});
}

int cmd_solve(const CommonOptions& opt) {
    const StoppingModel model = load_source(opt);
    const auto dir = prepare_out(opt);
    const SolveResult solution = solve_dp(model);

    RunSummary summary;
    summary.command = "solve";
    describe_inputs(summary, opt, model);
    emit_values(dir, "values", model.grid, solution.values, "v",
                opt.format);
    emit_values(dir, "one_step_loss", model.grid, solution.one_step_loss,
                "M", opt.format);
    emit_values(dir, "continuation_loss", model.grid,
                solution.continuation_loss, "L", opt.format);
    write_file(dir / "policy.csv", policy_csv(model.grid, solution.policy));

    const numvec& v0 = solution.values.front();
    summary.headline_values.push_back(
        {"value_t0_min", *std::min_element(v0.begin(), v0.end()), ""});
    summary.headline_values.push_back(
        {"value_t0_max", *std::max_element(v0.begin(), v0.end()), ""});
    return finish(summary, dir);
}

int cmd_check(const CommonOptions& opt, std::vector<std::string> checks,
              const std::vector<std::size_t>& first_block) {
    const StoppingModel model = load_source(opt);
    const auto dir = prepare_out(opt);
    const SolveResult solution = solve_dp(model);

    if (checks.empty()) {
        checks = {"stochastic-monotonicity", "monotone-costs",
                  "value-monotonicity",      "loss-monotonicity",
                  "one-step",                "control-limits",
                  "time-monotonicity"};
        if (!first_block.empty()) checks.push_back("partial");
    }

    RunSummary summary;
    summary.command = "check";
    describe_inputs(summary, opt, model);
    for (const std::string& name : checks) {
        if (name == "stochastic-monotonicity") {
            add_check(summary, check_stochastic_monotonicity(model));
        } else if (name == "monotone-costs") {
            add_check(summary, check_monotone_costs(model));
        } else if (name == "value-monotonicity") {
            add_check(summary,
                      check_value_monotonicity(model.grid, solution.values));
        } else if (name == "loss-monotonicity") {
            add_check(summary,
                      check_loss_monotonicity(model.grid,
                                              solution.continuation_loss));
        } else if (name == "one-step") {
            const OneStepConditionsReport report =
                check_one_step_conditions(model, solution);
            for (const StructureCheck* item : report.items())
                add_check(summary, *item);
        } else if (name == "control-limits") {
            for (std::size_t d = 0; d < model.grid.dims(); ++d) {
                ControlLimitExtraction limits =
                    extract_control_limits(model.grid, solution.policy, d);
                add_check(summary, limits.check);
                write_file(dir / ("thresholds_dim" + std::to_string(d) +
                                  ".csv"),
                           thresholds_csv(model.grid, limits.table));
            }
        } else if (name == "time-monotonicity") {
            const ControlLimitExtraction limits =
                extract_control_limits(model.grid, solution.policy, 0);
            add_check(summary, check_threshold_time_monotonicity(
                                   model, limits.table));
        } else if (name == "partial") {
            if (first_block.empty())
                throw std::invalid_argument(
                    "--check partial requires --first-block");
            const StructureReport report =
                check_partial_assumptions(model, first_block);
            for (const StructureCheck& check : report.checks)
                add_check(summary, check);
        } else {
            throw std::invalid_argument("unknown check '" + name + "'");
        }
    }
    return finish(summary, dir);
}

void rational_headline(RunSummary& summary, const std::string& name,
                       double value, long long num, long long den) {
    std::string exact = std::to_string(num);
    if (den != 1) exact += "/" + std::to_string(den);
    summary.headline_values.push_back({name, value, exact});
}

int cmd_counterexamples(const CommonOptions& opt) {
    const auto dir = prepare_out(opt);
    const auto [tower, subadd] = make_counterexamples();

    RunSummary summary;
    summary.command = "counterexamples";
    summary.inputs.push_back({"alpha", format_double(tower.alpha)});

    // Scenario pmfs, one row per atom.
    std::ostringstream pmf;
    pmf << "scenario,z1,z2,prob\n";
    for (const auto& scenario : {tower, subadd})
        for (const auto& [z1, z2, p] : scenario.pmf)
            pmf << scenario.name << ',' << format_double(z1) << ','
                << format_double(z2) << ',' << format_double(p) << '\n';
    write_file(dir / "counterexamples.csv", pmf.str());

    const double joint = scenario_joint_cvar(tower);
    const double nested = scenario_nested_cvar(tower);
    const double tower_joint_expected =
        static_cast<double>(tower.joint_num) /
        static_cast<double>(tower.joint_den);
    const double tower_nested_expected =
        static_cast<double>(tower.nested_num) /
        static_cast<double>(tower.nested_den);
    add_flag(summary, "tower/joint-headline",
             joint == tower_joint_expected);
    add_flag(summary, "tower/nested-headline",
             std::fabs(nested - tower_nested_expected) <= 1e-9);
    add_flag(summary, "tower/property-fails",
             std::fabs(joint - nested) > 1e-6,
             "joint and nested evaluations differ");
    const StoppingModel chain = make_tower_chain_model();
    const SolveResult chain_solution = solve_dp(chain);
    // The nested value is attained from the middle state (price 0).
    const double chain_value = chain_solution.values[0][1];
    add_flag(summary, "tower/chain-consistency",
             std::fabs(chain_value - nested) <= 1e-9,
             "two-period chain reproduces the nested value");
    rational_headline(summary, "tower_joint", joint, tower.joint_num,
                      tower.joint_den);
    rational_headline(summary, "tower_nested", nested, tower.nested_num,
                      tower.nested_den);

    const double m1 = scenario_marginal_cvar(subadd, 0);
    const double m2 = scenario_marginal_cvar(subadd, 1);
    const double sum_cvar = scenario_joint_cvar(subadd);
    add_flag(summary, "subadditivity/marginal-headlines",
             m1 == 100.0 && m2 == 100.0);
    add_flag(summary, "subadditivity/joint-headline", sum_cvar == 100.0);
    add_flag(summary, "subadditivity/strict", sum_cvar < m1 + m2 - 1e-6,
             "CVaR(Z1+Z2) < CVaR(Z1) + CVaR(Z2)");
    rational_headline(summary, "subadd_sum", sum_cvar, subadd.joint_num,
                      subadd.joint_den);
    rational_headline(summary, "subadd_marginal", m1, 100, 1);
    return finish(summary, dir);
}

int cmd_example(const CommonOptions& opt, const std::string& name) {
    CommonOptions source = opt;
    source.builtin = name;
    source.model_file.clear();
    const StoppingModel model = load_source(source);
    const auto dir = prepare_out(opt);
    const SolveResult solution = solve_dp(model);

    RunSummary summary;
    summary.command = "example";
    summary.inputs.push_back({"name", name});
    describe_inputs(summary, source, model);

    emit_values(dir, "values", model.grid, solution.values, "v",
                opt.format);
    emit_values(dir, "one_step_loss", model.grid, solution.one_step_loss,
                "M", opt.format);
    write_file(dir / "policy.csv", policy_csv(model.grid, solution.policy));
    for (std::size_t d = 0; d < model.grid.dims(); ++d) {
        ControlLimitExtraction limits =
            extract_control_limits(model.grid, solution.policy, d);
        write_file(dir / ("thresholds_dim" + std::to_string(d) + ".csv"),
                   thresholds_csv(model.grid, limits.table));
        add_check(summary, limits.check);
    }

    if (name == "asset-sale") {
        const OneStepConditionsReport report =
            check_one_step_conditions(model, solution);
        for (const StructureCheck* item : report.items())
            add_check(summary, *item);
        const PolicyTable lookahead = one_step_lookahead_policy(model);
        add_flag(summary, "lookahead-equals-dp",
                 lookahead == solution.policy,
                 "one-step look-ahead policy matches backward induction");
    } else if (name == "deadline-sale") {
        add_check(summary,
                  check_loss_monotonicity(model.grid, solution.one_step_loss,
                                          /*strict=*/true));
        const ControlLimitExtraction limits =
            extract_control_limits(model.grid, solution.policy, 0);
        add_check(summary,
                  check_threshold_time_monotonicity(model, limits.table));
    } else if (name == "arf") {
        add_check(summary, check_stochastic_monotonicity(model));
        add_check(summary, check_monotone_costs(model));
        add_check(summary,
                  check_value_monotonicity(model.grid, solution.values));
        const StructureReport partial =
            check_partial_assumptions(model, {0});
        for (const StructureCheck& check : partial.checks)
            add_check(summary, check);
    }
    return finish(summary, dir);
}

int cmd_compare(const CommonOptions& opt, const std::string& risk2_text) {
    CommonOptions base = opt;
    StoppingModel first = load_source(base);
    StoppingModel second = first;
    second.risk = parse_risk_list(risk2_text, second.horizon);
    second.validate();

    const auto dir = prepare_out(opt);
    RunSummary summary;
    summary.command = "compare";
    describe_inputs(summary, opt, first);
    summary.inputs.push_back({"risk2", risk_description(second)});

    const RiskComparisonReport report =
        compare_risk_aversion(first, second, 200, opt.seed);
    add_flag(summary, "compare/probes-consistent", report.probes_consistent,
             report.note);
    add_flag(summary, "compare/values-ordered", report.values_ordered);
    add_flag(summary, "compare/stop-regions-nested",
             report.stop_regions_nested);

    const SolveResult sol1 = solve_dp(first);
    const SolveResult sol2 = solve_dp(second);
    emit_values(dir, "values_first", first.grid, sol1.values, "v",
                opt.format);
    emit_values(dir, "values_second", second.grid, sol2.values, "v",
                opt.format);
    if (report.more_averse >= 0) {
        const SolveResult& averse = report.more_averse == 0 ? sol1 : sol2;
        const SolveResult& neutral = report.more_averse == 0 ? sol2 : sol1;
        const auto t_averse =
            extract_control_limits(first.grid, averse.policy, 0);
        const auto t_neutral =
            extract_control_limits(first.grid, neutral.policy, 0);
        if (t_averse.check.ok() && t_neutral.check.ok())
            add_check(summary,
                      check_threshold_instance_ordering(t_averse.table,
                                                        t_neutral.table));
    }
    summary.headline_values.push_back(
        {"max_value_violation", report.max_value_violation, ""});
    return finish(summary, dir);
}

int cmd_oracle_verify(const CommonOptions& opt, std::size_t seeds) {
    const auto dir = prepare_out(opt);
    RunSummary summary;
    summary.command = "oracle-verify";
    summary.inputs.push_back({"seeds", std::to_string(seeds)});

    const std::vector<RiskSpec> risks = {
        RiskSpec::expectation(), RiskSpec::cvar(0.5),
        RiskSpec::mean_cvar(0.5, 0.3), RiskSpec::mean_semideviation(0.5)};
    double max_gap = 0.0;
    std::size_t mismatches = 0;
    for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
        const std::size_t states = 2 + static_cast<std::size_t>(seed % 3);
        const int horizon = 1 + static_cast<int>(seed % 3);
        const RiskSpec& risk = risks[static_cast<std::size_t>(seed) %
                                     risks.size()];
        const StoppingModel model =
            random_dense_model(seed, states, horizon, risk);
        const SolveResult solution = solve_dp(model);
        const EnumerationResult oracle = enumerate_policies(model);
        for (std::size_t s = 0; s < states; ++s) {
            const double gap =
                std::fabs(solution.values[0][s] - oracle.values[s]);
            max_gap = std::max(max_gap, gap);
            if (gap > 1e-10) ++mismatches;
        }
    }
    add_flag(summary, "oracle/solver-agreement", mismatches == 0,
             mismatches == 0 ? "all statewise values within 1e-10"
                             : std::to_string(mismatches) + " mismatches");
    summary.headline_values.push_back({"max_gap", max_gap, ""});
    summary.headline_values.push_back(
        {"models", static_cast<double>(seeds), ""});
    return finish(summary, dir);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "riskstop: finite-horizon risk-averse optimal stopping toolkit"};
    app.require_subcommand(1);

    CommonOptions opt;
    auto add_common = [&](CLI::App* cmd, bool with_source) {
        if (with_source) {
            cmd->add_option("--model", opt.model_file,
                            "model JSON file to load");
            cmd->add_option("--builtin", opt.builtin,
                            "builtin model name (tower-chain, deadline-sale, "
                            "asset-sale, arf, random-monotone, random-shift, "
                            "random-dense)");
            cmd->add_option("--params", opt.params,
                            "builtin parameters as K=V pairs "
                            "(comma- or space-separated)")
                ->delimiter(',');
            cmd->add_option("--risk", opt.risk_text,
                            "risk spec list, e.g. cvar:0.5 or "
                            "cvar:0.5,cvar:0.3 (t-indexed)");
        }
        cmd->add_option("--out", opt.out_dir, "output directory");
        cmd->add_option("--seed", opt.seed, "seed for generators/probes");
        cmd->add_option("--format", opt.format, "table format: csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* solve = app.add_subcommand("solve",
                                         "solve a model and emit tables");
    add_common(solve, true);

    CLI::App* check =
        app.add_subcommand("check", "run structure checks on a model");
    std::vector<std::string> check_list;
    std::vector<std::size_t> first_block;
    add_common(check, true);
    check->add_option("--check", check_list,
                      "checks to run (default: all applicable)")
        ->delimiter(',');
    check->add_option("--first-block", first_block,
                      "first-block dimensions for the partial check")
        ->delimiter(',');

    CLI::App* counter = app.add_subcommand(
        "counterexamples",
        "reproduce the tower-property and subadditivity counterexamples");
    add_common(counter, false);

    CLI::App* example = app.add_subcommand(
        "example", "solve and check a named worked example");
    std::string example_name;
    example->add_option("--name", example_name,
                        "asset-sale | deadline-sale | arf")
        ->required();
    add_common(example, true);

    CLI::App* compare = app.add_subcommand(
        "compare", "compare two risk levels on the same model");
    std::string risk2_text;
    add_common(compare, true);
    compare->add_option("--risk2", risk2_text,
                        "risk spec list of the second instance")
        ->required();

    CLI::App* verify = app.add_subcommand(
        "oracle-verify",
        "certify the solver against brute-force policy enumeration");
    std::size_t seeds = 100;
    verify->add_option("--seeds", seeds, "number of seeded models");
    add_common(verify, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(opt);
        if (check->parsed()) return cmd_check(opt, check_list, first_block);
        if (counter->parsed()) return cmd_counterexamples(opt);
        if (example->parsed()) return cmd_example(opt, example_name);
        if (compare->parsed()) return cmd_compare(opt, risk2_text);
        if (verify->parsed()) return cmd_oracle_verify(opt, seeds);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
