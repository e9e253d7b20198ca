#include "riskstop/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace riskstop {

namespace {

using nlohmann::json;

double parse_number(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("risk spec: bad " + what + " '" + text +
                                    "'");
    }
    if (used != text.size())
        throw std::invalid_argument("risk spec: trailing characters in " +
                                    what + " '" + text + "'");
    return value;
}

const json& field(const json& j, const char* key, const char* where) {
    const auto it = j.find(key);
    if (it == j.end())
        throw std::runtime_error(std::string("model schema: missing '") +
                                 key + "' in " + where);
    return *it;
}

numvec number_list(const json& j, const char* where) {
    if (!j.is_array())
        throw std::runtime_error(std::string("model schema: ") + where +
                                 " must be an array of numbers");
    numvec out;
    out.reserve(j.size());
    for (const json& v : j) {
        if (!v.is_number())
            throw std::runtime_error(std::string("model schema: ") + where +
                                     " must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<numvec> table_list(const json& j, const char* where) {
    if (!j.is_array())
        throw std::runtime_error(std::string("model schema: ") + where +
                                 " must be an array of tables");
    std::vector<numvec> out;
    out.reserve(j.size());
    for (const json& row : j) out.push_back(number_list(row, where));
    return out;
}

json risk_to_json(const RiskSpec& spec) {
    json j;
    j["kind"] = to_string(spec.kind);
    switch (spec.kind) {
        case RiskKind::Expectation:
            break;
        case RiskKind::CVaR:
            j["alpha"] = spec.alpha;
            break;
        case RiskKind::MeanCVaR:
            j["kappa"] = spec.kappa;
            j["gamma"] = spec.gamma;
            break;
        case RiskKind::MeanSemideviation:
            j["kappa"] = spec.kappa;
            break;
    }
    return j;
}

RiskSpec risk_from_json(const json& j) {
    const std::string kind = field(j, "kind", "risk").get<std::string>();
    if (kind == "expectation") return RiskSpec::expectation();
    if (kind == "cvar")
        return RiskSpec::cvar(field(j, "alpha", "risk").get<double>());
    if (kind == "meancvar")
        return RiskSpec::mean_cvar(field(j, "kappa", "risk").get<double>(),
                                   field(j, "gamma", "risk").get<double>());
    if (kind == "meansemidev")
        return RiskSpec::mean_semideviation(
            field(j, "kappa", "risk").get<double>());
    throw std::runtime_error("model schema: unknown risk kind '" + kind +
                             "'");
}

MonotoneDirection direction_from_string(const std::string& text) {
    if (text == "increasing") return MonotoneDirection::Increasing;
    if (text == "decreasing") return MonotoneDirection::Decreasing;
    throw std::runtime_error("model schema: unknown direction '" + text +
                             "'");
}

std::string direction_to_string(MonotoneDirection d) {
    return d == MonotoneDirection::Increasing ? "increasing" : "decreasing";
}

CostModel builtin_costs(const json& spec, const StateGrid& grid,
                        int horizon) {
    const std::string name =
        field(spec, "name", "costs.builtin").get<std::string>();
    const auto tables = static_cast<std::size_t>(horizon) + 1;
    CostModel costs;
    costs.cont.assign(static_cast<std::size_t>(horizon),
                      numvec(grid.size(), 0.0));
    costs.stop.assign(tables, numvec(grid.size(), 0.0));
    if (name == "negate_price") {
        if (grid.dims() != 1)
            throw std::runtime_error(
                "model schema: negate_price costs need a scalar grid");
        for (std::size_t t = 0; t < tables; ++t)
            for (std::size_t s = 0; s < grid.size(); ++s)
                costs.stop[t][s] = -grid.axis(0)[s];
        return costs;
    }
    if (name == "compounded_sale") {
        if (grid.dims() != 1)
            throw std::runtime_error(
                "model schema: compounded_sale costs need a scalar grid");
        const double rate = field(spec, "rate", "costs.builtin").get<double>();
        for (std::size_t t = 0; t < tables; ++t) {
            const double factor =
                std::pow(1.0 + rate, static_cast<double>(tables - 1 - t));
            for (std::size_t s = 0; s < grid.size(); ++s)
                costs.stop[t][s] = -grid.axis(0)[s] * factor;
        }
        return costs;
    }
    if (name == "affine_two_factor") {
        if (grid.dims() != 2)
            throw std::runtime_error(
                "model schema: affine_two_factor costs need a 2-d grid");
        const numvec a = number_list(field(spec, "a", "costs.builtin"), "a");
        const numvec b = number_list(field(spec, "b", "costs.builtin"), "b");
        const numvec c = number_list(field(spec, "c", "costs.builtin"), "c");
        if (a.size() != tables || b.size() != tables || c.size() != tables)
            throw std::runtime_error(
                "model schema: affine_two_factor coefficients must have "
                "length horizon+1");
        for (std::size_t t = 0; t < tables; ++t)
            for (std::size_t s = 0; s < grid.size(); ++s) {
                const numvec x = grid.point(s);
                costs.stop[t][s] = -(a[t] * x[0] + b[t] * x[1] + c[t]);
            }
        return costs;
    }
    throw std::runtime_error("model schema: unknown builtin cost '" + name +
                             "'");
}

}  // namespace

RiskSpec parse_risk_spec(const std::string& text) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.empty()) throw std::invalid_argument("risk spec: empty");
    const std::string& kind = parts[0];
    if (kind == "expectation") {
        if (parts.size() != 1)
            throw std::invalid_argument(
                "risk spec: expectation takes no parameters");
        return RiskSpec::expectation();
    }
    if (kind == "cvar") {
        if (parts.size() != 2)
            throw std::invalid_argument("risk spec: cvar takes one "
                                        "parameter, e.g. cvar:0.5");
        return RiskSpec::cvar(parse_number(parts[1], "alpha"));
    }
    if (kind == "meancvar") {
        if (parts.size() != 3)
            throw std::invalid_argument(
                "risk spec: meancvar takes two parameters, e.g. "
                "meancvar:0.8:0.2");
        return RiskSpec::mean_cvar(parse_number(parts[1], "kappa"),
                                   parse_number(parts[2], "gamma"));
    }
    if (kind == "meansemidev") {
        if (parts.size() != 2)
            throw std::invalid_argument(
                "risk spec: meansemidev takes one parameter, e.g. "
                "meansemidev:0.5");
        return RiskSpec::mean_semideviation(parse_number(parts[1], "kappa"));
    }
    throw std::invalid_argument("risk spec: unknown kind '" + kind + "'");
}

std::vector<RiskSpec> parse_risk_list(const std::string& text, int horizon) {
    detail::require(horizon >= 1, "parse_risk_list: horizon must be >= 1");
    std::vector<RiskSpec> specs;
    std::string entry;
    std::istringstream in(text);
    while (std::getline(in, entry, ',')) specs.push_back(parse_risk_spec(entry));
    if (specs.empty()) throw std::invalid_argument("risk list: empty");
    if (specs.size() == 1)
        return std::vector<RiskSpec>(static_cast<std::size_t>(horizon),
                                     specs[0]);
    if (specs.size() != static_cast<std::size_t>(horizon))
        throw std::invalid_argument(
            "risk list: need 1 or horizon (" + std::to_string(horizon) +
            ") entries, got " + std::to_string(specs.size()));
    return specs;
}

std::string save_model(const StoppingModel& model) {
    model.validate();
    json j;
    j["horizon"] = model.horizon;
    j["grid"] = model.grid.axes();

    const bool named_dynamics = model.dynamics.has_value() &&
                                !model.dynamics->descriptor.name.empty() &&
                                model.dynamics->descriptor.name != "custom";
    if (named_dynamics) {
        json shock;
        shock["atoms"] = model.dynamics->shock.atoms;
        shock["probs"] = model.dynamics->shock.law.weights();
        json map;
        map["name"] = model.dynamics->descriptor.name;
        map["lambda"] = model.dynamics->descriptor.lambda;
        if (!model.dynamics->descriptor.shifts.empty())
            map["shifts"] = model.dynamics->descriptor.shifts;
        shock["map"] = std::move(map);
        json directions = json::array();
        for (MonotoneDirection d : model.dynamics->directions)
            directions.push_back(direction_to_string(d));
        shock["directions"] = std::move(directions);
        j["kernel"]["shared_shock"] = std::move(shock);
    } else {
        json tabular = json::array();
        for (std::size_t t = 0; t < model.kernel.horizon(); ++t) {
            json per_t = json::array();
            for (std::size_t s = 0; s < model.grid.size(); ++s)
                per_t.push_back(model.kernel.row(t, s).weights());
            tabular.push_back(std::move(per_t));
        }
        j["kernel"]["tabular"] = std::move(tabular);
    }

    j["costs"]["stop"] = model.costs.stop;
    j["costs"]["continue"] = model.costs.cont;

    json risk = json::array();
    for (const RiskSpec& spec : model.risk) risk.push_back(risk_to_json(spec));
    j["risk"] = std::move(risk);
    return j.dump(2) + "\n";
}

StoppingModel parse_model(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("model file: ") + e.what());
    }
    if (!j.is_object())
        throw std::runtime_error("model schema: top level must be an object");

    StoppingModel model;
    model.horizon = field(j, "horizon", "model").get<int>();
    if (model.horizon < 1)
        throw std::runtime_error("model schema: horizon must be >= 1");

    const json& grid_json = field(j, "grid", "model");
    if (!grid_json.is_array() || grid_json.empty())
        throw std::runtime_error(
            "model schema: grid must be a non-empty array of axes");
    std::vector<numvec> axes;
    for (const json& axis : grid_json) axes.push_back(number_list(axis, "grid axis"));
    model.grid = StateGrid(std::move(axes));

    const json& kernel_json = field(j, "kernel", "model");
    const bool has_tabular = kernel_json.contains("tabular");
    const bool has_shared = kernel_json.contains("shared_shock");
    if (has_tabular == has_shared)
        throw std::runtime_error(
            "model schema: kernel needs exactly one of 'tabular' or "
            "'shared_shock'");
    if (has_tabular) {
        const json& rows_json = kernel_json["tabular"];
        if (!rows_json.is_array())
            throw std::runtime_error(
                "model schema: kernel.tabular must be an array per period");
        std::vector<std::vector<numvec>> rows;
        for (const json& per_t : rows_json)
            rows.push_back(table_list(per_t, "kernel row"));
        if (rows.size() != static_cast<std::size_t>(model.horizon))
            throw std::runtime_error(
                "model schema: kernel.tabular must have horizon entries");
        model.kernel = build_tabular_kernel(model.grid, rows);
    } else {
        const json& shock_json = kernel_json["shared_shock"];
        numvec atoms =
            number_list(field(shock_json, "atoms", "shared_shock"), "atoms");
        numvec probs =
            number_list(field(shock_json, "probs", "shared_shock"), "probs");
        const json& map_json = field(shock_json, "map", "shared_shock");
        DynamicsDescriptor descriptor;
        descriptor.name =
            field(map_json, "name", "shared_shock.map").get<std::string>();
        if (map_json.contains("lambda"))
            descriptor.lambda = map_json["lambda"].get<double>();
        if (map_json.contains("shifts"))
            descriptor.shifts =
                map_json["shifts"].get<std::vector<std::vector<long>>>();
        std::vector<MonotoneDirection> directions;
        for (const json& d :
             field(shock_json, "directions", "shared_shock")) {
            directions.push_back(direction_from_string(d.get<std::string>()));
        }
        SharedShockDynamics dynamics{
            DiscreteShock(std::move(atoms), FiniteDistribution(probs)),
            std::move(directions), std::move(descriptor), nullptr};
        SharedShockBuild build =
            build_shared_shock_kernel(model.grid, dynamics, model.horizon);
        model.kernel = std::move(build.kernel);
        model.certificate = build.certificate;
        model.max_projection_displacement = build.max_displacement;
        model.dynamics = std::move(dynamics);
    }

    const json& costs_json = field(j, "costs", "model");
    if (costs_json.contains("builtin")) {
        model.costs =
            builtin_costs(costs_json["builtin"], model.grid, model.horizon);
    } else {
        model.costs.stop =
            table_list(field(costs_json, "stop", "costs"), "stop cost");
        model.costs.cont = table_list(
            field(costs_json, "continue", "costs"), "continue cost");
    }

    const json& risk_json = field(j, "risk", "model");
    if (risk_json.is_object()) {
        model.risk.assign(static_cast<std::size_t>(model.horizon),
                          risk_from_json(risk_json));
    } else if (risk_json.is_array()) {
        for (const json& spec : risk_json)
            model.risk.push_back(risk_from_json(spec));
        if (model.risk.size() == 1)
            model.risk.assign(static_cast<std::size_t>(model.horizon),
                              model.risk[0]);
        if (model.risk.size() != static_cast<std::size_t>(model.horizon))
            throw std::runtime_error(
                "model schema: risk must have 1 or horizon entries");
    } else {
        throw std::runtime_error(
            "model schema: risk must be an object or an array");
    }

    model.validate();
    return model;
}

void save_model_file(const StoppingModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << save_model(model);
    if (!out) throw std::runtime_error("write failed: " + path);
}

StoppingModel load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_model(buffer.str());
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace riskstop
