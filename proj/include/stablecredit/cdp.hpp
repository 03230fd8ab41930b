#pragma once

#include <optional>
#include <string>

#include "stablecredit/decimal.hpp"

namespace stablecredit::cdp {

struct Position {
  std::string owner;
  Decimal collateral_value;
  Decimal liquidation_threshold;
  Decimal debt;

  bool operator==(const Position&) const = default;
};

/// Health factor, or the unleveraged marker for a debt-free position.
class HealthFactor {
 public:
  static HealthFactor unleveraged() { return HealthFactor{}; }
  static HealthFactor of(Decimal value) { return HealthFactor{std::move(value)}; }

  bool is_unleveraged() const { return !value_.has_value(); }
  /// Precondition: !is_unleveraged().
  const Decimal& value() const { return *value_; }
  bool below_one() const { return value_ && *value_ < Decimal::one(); }

  bool operator==(const HealthFactor&) const = default;

 private:
  HealthFactor() = default;
  explicit HealthFactor(Decimal v) : value_(std::move(v)) {}
  std::optional<Decimal> value_;
};

struct LiquidationOutcome {
  Decimal debt_repaid;
  Decimal collateral_seized;
  Decimal liquidator_profit;
  Decimal bad_debt;

  bool operator==(const LiquidationOutcome&) const = default;
};

/// Throws Error(kRange) for negative collateral or debt, or a threshold
/// outside (0, 1].
void validate(const Position& p);

HealthFactor health_factor(const Position& p);

/// Adds `amount` of debt. Throws Error(kExceedsLtv) when the new debt would
/// exceed collateral_value * ltv_cap.
Position mint(const Position& p, const Decimal& amount, const Decimal& ltv_cap);

/// Full-debt liquidation with a collateral bonus. Throws
/// Error(kNotLiquidatable) unless the health factor is below one.
LiquidationOutcome liquidate(const Position& p, const Decimal& bonus);

}  // namespace stablecredit::cdp
