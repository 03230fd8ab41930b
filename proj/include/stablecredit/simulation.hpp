#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stablecredit/analysis.hpp"
#include "stablecredit/ledger.hpp"
#include "stablecredit/scenario.hpp"

namespace stablecredit::sim {

struct LedgerSnapshot {
  std::uint64_t step = 0;
  ledger::SupplyLedger ledger;
  Decimal price_multiplier;
  Decimal lending_borrowed;
  std::optional<Decimal> vault_assets;
  std::optional<Decimal> undercollateralization;

  bool operator==(const LedgerSnapshot&) const = default;
};

/// One line of the event log.
struct Event {
  std::uint64_t step = 0;
  std::string facilitator;  // cdp, psm, amo, lending:<name>, perps, fund
  std::string type;
  std::map<std::string, Decimal> amounts;
  std::string detail;

  bool operator==(const Event&) const = default;
};

struct Accruals {
  Decimal credit_interest;
  Decimal protocol_share;
  Decimal supplier_interest;
  Decimal lend_interest;
  Decimal cdp_interest;
  Decimal trader_paid;
  Decimal trader_received;

  bool operator==(const Accruals&) const = default;
};

/// Scalar outcome of one path; what Monte Carlo aggregates.
struct PathOutcome {
  Decimal peak_circulating_unbacked;
  Decimal peak_undercollateralization;
  Decimal total_shortfall;
  Decimal total_bad_debt;
  std::uint64_t liquidations = 0;

  bool operator==(const PathOutcome&) const = default;
};

struct McStat {
  Decimal mean;
  Decimal max;
  Decimal p50;
  Decimal p90;
  Decimal p95;
  Decimal p99;
  /// Share of paths with a strictly positive value.
  Decimal prob_positive;

  bool operator==(const McStat&) const = default;
};

struct McSummary {
  std::uint64_t paths = 0;
  std::uint64_t seed = 0;
  std::string generator;
  McStat peak_undercollateralization;
  McStat peak_circulating_unbacked;
  McStat total_shortfall;

  bool operator==(const McSummary&) const = default;
};

struct SimulationReport {
  std::string tool_version;
  std::string scenario_name;
  std::string scenario_hash;
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  analysis::UnderwritingReport underwriting;
  analysis::YieldReport yield;
  analysis::RiskMatrixReport risk_register;
  std::vector<LedgerSnapshot> snapshots;
  std::vector<Event> events;
  ledger::SupplyLedger final_ledger;
  PathOutcome outcome;
  Accruals accruals;
  /// Realized interest over the horizon directed to the pool, annualized
  /// and divided by pool TVL.
  Decimal realized_yield;
  std::optional<McSummary> monte_carlo;

  bool operator==(const SimulationReport&) const = default;
};

/// Runs path 0 of the scenario with every "auto" credit line resolved.
/// Deterministic in (config, seed).
SimulationReport run_simulation(const scenario::ScenarioConfig& config, std::uint64_t seed);

/// Outcome of path `path` alone, without snapshots or events.
PathOutcome simulate_path(const scenario::ScenarioConfig& config,
                          const analysis::UnderwritingReport& uw, std::uint64_t seed,
                          std::uint64_t path);

/// `paths` independent paths on up to `threads` workers (0 = hardware
/// concurrency). The summary depends only on (config, paths, seed).
McSummary monte_carlo(const scenario::ScenarioConfig& config, std::uint64_t paths,
                      std::uint64_t seed, unsigned threads = 0);

/// Summary statistics over per-path values; order-insensitive.
McStat summarize(std::vector<Decimal> values);

/// Per-step standard deviation of the default trader P&L model as a
/// fraction of the credit line, chosen so the 99th percentile of peak
/// undercollateralization over `horizon` steps is about 6%.
double default_pnl_sigma_fraction(std::uint64_t horizon);

}  // namespace stablecredit::sim
