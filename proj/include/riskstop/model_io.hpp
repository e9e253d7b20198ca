#pragma once

#include <string>
#include <vector>

#include "riskstop/model.hpp"

namespace riskstop {

/// Parse "kind[:params]" into a risk specification:
///   expectation | cvar:ALPHA | meancvar:KAPPA:GAMMA | meansemidev:KAPPA
/// The inverse is RiskSpec::describe().
RiskSpec parse_risk_spec(const std::string& text);

/// Parse a comma-separated list of risk specs. A single entry is
/// replicated across the horizon; otherwise exactly `horizon` entries are
/// required (t-indexed).
std::vector<RiskSpec> parse_risk_list(const std::string& text, int horizon);

/// Serialize a model to its JSON document:
///   {horizon, grid: [axis...], kernel: {tabular | shared_shock},
///    costs: {stop, continue}, risk: [spec...]}
/// Kernels built from named shared-shock dynamics keep the construction
/// (atoms, probs, map, directions) so loading rebuilds the identical
/// kernel together with its comonotonicity certificate; custom dynamics
/// fall back to the tabular form. Doubles are emitted with
/// shortest-round-trip precision, so load(save(m)) == m bit for bit.
std::string save_model(const StoppingModel& model);

/// Parse a model from JSON text. Schema errors name the offending field;
/// syntax errors carry the byte position.
StoppingModel parse_model(const std::string& json_text);

void save_model_file(const StoppingModel& model, const std::string& path);
StoppingModel load_model_file(const std::string& path);

}  // namespace riskstop
