#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stablecredit/cdp.hpp"
#include "stablecredit/decimal.hpp"
#include "stablecredit/rate_models.hpp"
#include "stablecredit/risk_model.hpp"

namespace stablecredit::scenario {

struct PoolConfig {
  Decimal stable;
  Decimal counter;
  std::uint64_t amplification = 100;

  bool operator==(const PoolConfig&) const = default;
};

/// Per-step borrowing target of an external market, as utilization.
struct DemandModel {
  enum class Kind { kConstant, kSequence, kUniform };
  Kind kind = Kind::kConstant;
  Decimal utilization;           // constant
  std::vector<Decimal> values;   // sequence; last value held
  Decimal min;                   // uniform
  Decimal max;

  bool operator==(const DemandModel&) const = default;
};

struct ExternalMarketConfig {
  std::string name;
  rates::PiecewiseRateParams rate;
  Decimal reserve_factor;
  /// Empty means "auto": sized by the underwriting engine.
  std::optional<Decimal> credit_line;
  /// Empty means constant borrowing at the market's u_optimal.
  std::optional<DemandModel> demand;

  bool operator==(const ExternalMarketConfig&) const = default;
};

/// Trader P&L per step, in stablecoins (positive = traders win).
struct PnlModel {
  enum class Kind { kSequence, kBernoulli, kGaussian };
  Kind kind = Kind::kGaussian;
  std::vector<Decimal> values;  // sequence; zero after the end
  Decimal win_probability;      // bernoulli
  Decimal win_size;
  Decimal loss_size;
  Decimal mu;                   // gaussian
  Decimal sigma;

  bool operator==(const PnlModel&) const = default;
};

struct PerpsConfig {
  std::optional<Decimal> credit_line;  // empty = auto
  Decimal target_rate = Decimal::parse("0.10");
  Decimal worst_case_drawdown = Decimal::parse("0.06");
  /// Empty selects the default Gaussian model scaled to the credit line.
  std::optional<PnlModel> pnl;

  bool operator==(const PerpsConfig&) const = default;
};

struct PsmConfig {
  Decimal stable_reserve;
  Decimal counter_reserve;

  bool operator==(const PsmConfig&) const = default;
};

/// Collateral price multiplier applied to every position's initial value.
struct PricePath {
  enum class Kind { kConstant, kSequence, kGbm };
  Kind kind = Kind::kConstant;
  std::vector<Decimal> values;  // sequence; last value held
  Decimal mu;                   // gbm, annualized
  Decimal sigma;

  bool operator==(const PricePath&) const = default;
};

struct CdpBookConfig {
  Decimal ltv_cap = Decimal::parse("0.8");
  Decimal liquidation_bonus = Decimal::parse("0.05");
  Decimal interest_rate;
  std::vector<cdp::Position> positions;
  PricePath price_path;

  bool operator==(const CdpBookConfig&) const = default;
};

/// Overrides for the facilitator's own issuance in yield accounting.
struct LendConfig {
  std::optional<Decimal> supply;  // default: pool stable reserve
  std::optional<Decimal> rate;    // default: controller rate at optimal utilization

  bool operator==(const LendConfig&) const = default;
};

struct UnderwritingConfig {
  std::uint64_t grid_points = 101;
  Decimal grid_max = Decimal::parse("0.99");

  bool operator==(const UnderwritingConfig&) const = default;
};

struct Action {
  enum class Type { kBackfill, kPsmSwapIn, kPsmRedeem, kAmoStableIn, kAmoCounterIn };
  std::uint64_t step = 1;
  Type type = Type::kBackfill;
  Decimal amount;

  bool operator==(const Action&) const = default;
};

struct RngConfig {
  std::string algorithm = "philox4x64-10";
  std::uint64_t seed = 0;

  bool operator==(const RngConfig&) const = default;
};

struct ScenarioConfig {
  std::string name;
  PoolConfig pool;
  rates::ControllerParams controller;
  std::vector<ExternalMarketConfig> external_markets;
  std::optional<PerpsConfig> perps;
  std::optional<PsmConfig> psm;
  std::optional<CdpBookConfig> cdp_book;
  LendConfig lend;
  UnderwritingConfig underwriting;
  std::vector<Action> actions;
  /// Added to the built-in risk register in reports.
  std::vector<risk::RiskRegisterEntry> risks;
  std::uint64_t horizon = 365;
  Decimal dt = Decimal::one() / Decimal::from_int(365);
  RngConfig rng;

  bool operator==(const ScenarioConfig&) const = default;
};

std::string_view action_type_name(Action::Type t);

/// Parses and validates a scenario document. Throws Error with kParse for
/// malformed JSON, kSchema for missing/unknown/mistyped fields and kRange
/// for out-of-range values; Error::path() holds the JSON pointer.
ScenarioConfig parse_scenario(std::string_view json_text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Canonical JSON with every default written out; parse_scenario of the
/// result reproduces the config.
std::string emit_scenario(const ScenarioConfig& config);

/// FNV-1a 64 of the canonical emission, as 16 hex digits.
std::string scenario_hash(const ScenarioConfig& config);

}  // namespace stablecredit::scenario
