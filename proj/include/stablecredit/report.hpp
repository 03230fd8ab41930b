#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stablecredit/analysis.hpp"
#include "stablecredit/simulation.hpp"
#include "stablecredit/stableswap.hpp"

namespace stablecredit::report {

// Machine-readable reports. Decimals are written as canonical strings so
// every value survives a round trip exactly.

std::string to_json(const amm::SwapQuote& q);
std::string to_json(const analysis::UnderwritingReport& r);
std::string to_json(const analysis::YieldReport& r);
std::string to_json(const analysis::AbsorbReport& r);
std::string to_json(const analysis::RiskMatrixReport& r);
std::string to_json(const sim::McSummary& s);
std::string to_json(const sim::SimulationReport& r);

/// One JSON object per line.
std::string events_to_jsonl(const std::vector<sim::Event>& events);

sim::SimulationReport simulation_from_json(std::string_view text);
sim::McSummary mc_summary_from_json(std::string_view text);

}  // namespace stablecredit::report
