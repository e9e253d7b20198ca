#pragma once

#include <string>
#include <utility>
#include <vector>

#include "riskstop/grid.hpp"
#include "riskstop/solver.hpp"
#include "riskstop/structure.hpp"

namespace riskstop {

/// Shortest representation that parses back to the same double
/// (std::to_chars); infinities print as "inf"/"-inf".
std::string format_double(double value);

/// One row per state: the grid coordinates, then one column per period.
/// Header: x0,...,x{n-1},<prefix>_t0,...  Rows follow flat state order.
std::string values_csv(const StateGrid& grid,
                       const std::vector<numvec>& tables,
                       const std::string& prefix);

/// One row per state: coordinates, then action_t0,... with values
/// "stop"/"continue".
std::string policy_csv(const StateGrid& grid, const PolicyTable& policy);

/// One row per slice of the scanned dimension: the coordinates of the
/// remaining dimensions, then per period a threshold column and a regime
/// column (stop-below, stop-above, all-stop, all-continue).
std::string thresholds_csv(const StateGrid& grid, const ThresholdTable& table);

struct SummaryVerdict {
    std::string item;
    std::string verdict;
    std::string note;  // optional witness description
};

/// Headline number with an optional exact rational rendering ("4000/97").
struct HeadlineValue {
    std::string name;
    double value = 0.0;
    std::string exact;
};

struct RunSummary {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<SummaryVerdict> verdicts;
    std::vector<HeadlineValue> headline_values;
};

/// Deterministic JSON rendering of a run summary:
/// {command, inputs, verdicts[], headline_values{}} plus
/// headline_exact{} for the rational forms.
std::string summary_json(const RunSummary& summary);

}  // namespace riskstop
