#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stablecredit/risk_model.hpp"
#include "stablecredit/scenario.hpp"
#include "stablecredit/stableswap.hpp"
#include "stablecredit/underwriting.hpp"

namespace stablecredit::analysis {

struct MarketUnderwriting {
  std::string name;
  rates::PiecewiseRateParams rate;
  Decimal rate_at_optimal;
  /// Closed-form fraction at u_optimal.
  Decimal x_closed_form;
  /// Largest fraction satisfying the condition on the whole grid.
  Decimal x_safe;
  /// Fraction actually used: x_safe for "auto", else configured / counter.
  Decimal x;
  Decimal credit_line;
  bool auto_sized = true;
  underwriting::UnderwritingVerdict verdict;

  bool operator==(const MarketUnderwriting&) const = default;
};

struct PerpsUnderwriting {
  Decimal target_rate;
  Decimal worst_case_drawdown;
  Decimal absorbable;
  Decimal b2s_size;
  Decimal credit_line;
  bool auto_sized = true;

  bool operator==(const PerpsUnderwriting&) const = default;
};

struct UnderwritingReport {
  Decimal counterassets;
  Decimal gain;
  std::vector<MarketUnderwriting> markets;
  std::optional<PerpsUnderwriting> perps;
  std::vector<std::string> caveats;

  bool operator==(const UnderwritingReport&) const = default;
};

/// Resolves every "auto" credit line and evaluates each market's condition.
UnderwritingReport underwrite(const scenario::ScenarioConfig& config);

struct MarketYield {
  std::string name;
  Decimal credit_line;
  Decimal utilization;
  Decimal borrowed;
  Decimal external_rate;
  Decimal reserve_factor;
  Decimal credit_interest;
  Decimal protocol_share;
  Decimal supplier_interest;

  bool operator==(const MarketYield&) const = default;
};

struct YieldReport {
  std::vector<MarketYield> markets;
  Decimal total_borrowed;
  Decimal controller_e;
  Decimal lend_supply;
  Decimal lend_rate;
  Decimal lend_interest;
  Decimal supplier_interest;
  Decimal directed_to_pool;
  Decimal pool_tvl;
  Decimal yield;

  bool operator==(const YieldReport&) const = default;
};

/// Annual endogenous yield at each market's initial borrowing demand.
YieldReport yield(const scenario::ScenarioConfig& config, const UnderwritingReport& uw);

struct AbsorbReport {
  Decimal target_rate;
  Decimal gain;
  Decimal counterassets;
  Decimal controller_e;
  Decimal absorbable;
  Decimal worst_case_drawdown;
  Decimal b2s_credit_size;

  bool operator==(const AbsorbReport&) const = default;
};

AbsorbReport absorb(const scenario::ScenarioConfig& config);

struct RiskRow {
  risk::RiskRegisterEntry entry;
  risk::RiskCell unmitigated;
  risk::RiskCell mitigated;

  bool operator==(const RiskRow&) const = default;
};

struct RiskMatrixReport {
  std::vector<RiskRow> register_rows;
  /// All nine cells, likelihood-major (A1, A2, A3, B1, ...).
  std::vector<risk::RiskCell> grid;

  bool operator==(const RiskMatrixReport&) const = default;
};

/// Built-in register followed by the scenario's extra risks.
RiskMatrixReport risk_matrix(const scenario::ScenarioConfig* config);

amm::PoolState core_pool(const scenario::ScenarioConfig& config);

}  // namespace stablecredit::analysis
