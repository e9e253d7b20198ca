#include "riskstop/report_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace riskstop {

std::string format_double(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    char buffer[64];
    const auto result =
        std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

namespace {

void append_state_header(std::ostringstream& out, const StateGrid& grid) {
    for (std::size_t d = 0; d < grid.dims(); ++d) {
        if (d > 0) out << ',';
        out << 'x' << d;
    }
}

void append_state_coords(std::ostringstream& out, const StateGrid& grid,
                         std::size_t state) {
    const auto multi = grid.to_multi(state);
    for (std::size_t d = 0; d < grid.dims(); ++d) {
        if (d > 0) out << ',';
        out << format_double(grid.axis(d)[multi[d]]);
    }
}

std::string regime_label(const ThresholdEntry& entry) {
    switch (entry.kind) {
        case SliceKind::AllStop: return "all-stop";
        case SliceKind::AllContinue: return "all-continue";
        case SliceKind::Boundary: return to_string(entry.orientation);
    }
    return "unknown";
}

}  // namespace

std::string values_csv(const StateGrid& grid,
                       const std::vector<numvec>& tables,
                       const std::string& prefix) {
    std::ostringstream out;
    append_state_header(out, grid);
    for (std::size_t t = 0; t < tables.size(); ++t)
        out << ',' << prefix << "_t" << t;
    out << '\n';
    for (std::size_t s = 0; s < grid.size(); ++s) {
        append_state_coords(out, grid, s);
        for (const numvec& table : tables)
            out << ',' << format_double(table.at(s));
        out << '\n';
    }
    return out.str();
}

std::string policy_csv(const StateGrid& grid, const PolicyTable& policy) {
    std::ostringstream out;
    append_state_header(out, grid);
    for (std::size_t t = 0; t < policy.size(); ++t)
        out << ",action_t" << t;
    out << '\n';
    for (std::size_t s = 0; s < grid.size(); ++s) {
        append_state_coords(out, grid, s);
        for (const auto& stage : policy)
            out << ','
                << (stage.at(s) == Action::Stop ? "stop" : "continue");
        out << '\n';
    }
    return out.str();
}

std::string thresholds_csv(const StateGrid& grid,
                           const ThresholdTable& table) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t d : table.other_dims) {
        if (!first) out << ',';
        out << 'x' << d;
        first = false;
    }
    if (table.other_dims.empty()) {
        out << "slice";
        first = false;
    }
    for (std::size_t t = 0; t < table.entries.size(); ++t)
        out << ",threshold_t" << t << ",regime_t" << t;
    out << '\n';
    for (std::size_t slice = 0; slice < table.slice_count(); ++slice) {
        const auto multi = table.slice_multi(slice);
        if (table.other_dims.empty()) {
            out << 0;
        } else {
            for (std::size_t k = 0; k < table.other_dims.size(); ++k) {
                if (k > 0) out << ',';
                out << format_double(
                    grid.axis(table.other_dims[k])[multi[k]]);
            }
        }
        for (const auto& per_t : table.entries) {
            const ThresholdEntry& entry = per_t.at(slice);
            out << ',' << format_double(entry.value) << ','
                << regime_label(entry);
        }
        out << '\n';
    }
    return out.str();
}

std::string summary_json(const RunSummary& summary) {
    nlohmann::ordered_json j;
    j["command"] = summary.command;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const auto& [key, value] : summary.inputs) inputs[key] = value;
    j["inputs"] = std::move(inputs);
    nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
    for (const SummaryVerdict& v : summary.verdicts) {
        nlohmann::ordered_json record;
        record["item"] = v.item;
        record["verdict"] = v.verdict;
        if (!v.note.empty()) record["note"] = v.note;
        verdicts.push_back(std::move(record));
    }
    j["verdicts"] = std::move(verdicts);
    nlohmann::ordered_json values = nlohmann::ordered_json::object();
    nlohmann::ordered_json exact = nlohmann::ordered_json::object();
    for (const HeadlineValue& h : summary.headline_values) {
        values[h.name] = h.value;
        if (!h.exact.empty()) exact[h.name] = h.exact;
    }
    j["headline_values"] = std::move(values);
    if (!exact.empty()) j["headline_exact"] = std::move(exact);
    return j.dump(2) + "\n";
}

}  // namespace riskstop
