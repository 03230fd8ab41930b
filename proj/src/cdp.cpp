#include "stablecredit/cdp.hpp"

#include "stablecredit/error.hpp"

namespace stablecredit::cdp {

void validate(const Position& p) {
  if (p.collateral_value.is_negative()) {
    throw Error(ErrorCode::kRange, "position '" + p.owner + "': negative collateral");
  }
  if (p.debt.is_negative()) {
    throw Error(ErrorCode::kRange, "position '" + p.owner + "': negative debt");
  }
  if (!p.liquidation_threshold.is_positive() || p.liquidation_threshold > Decimal::one()) {
    throw Error(ErrorCode::kRange,
                "position '" + p.owner + "': liquidation threshold must lie in (0, 1]");
  }
}

HealthFactor health_factor(const Position& p) {
  validate(p);
  if (p.debt.is_zero()) return HealthFactor::unleveraged();
  return HealthFactor::of(mul_div(p.collateral_value, p.liquidation_threshold, p.debt));
}

Position mint(const Position& p, const Decimal& amount, const Decimal& ltv_cap) {
  validate(p);
  if (amount.is_negative()) throw Error(ErrorCode::kOutOfRange, "mint amount must be >= 0");
  Position out = p;
  out.debt += amount;
  if (out.debt > p.collateral_value * ltv_cap) {
    throw Error(ErrorCode::kExceedsLtv, "mint of " + amount.to_string() + " exceeds LTV cap " +
                                            ltv_cap.to_string());
  }
  return out;
}

LiquidationOutcome liquidate(const Position& p, const Decimal& bonus) {
  if (bonus.is_negative()) throw Error(ErrorCode::kOutOfRange, "bonus must be >= 0");
  if (!health_factor(p).below_one()) {
    throw Error(ErrorCode::kNotLiquidatable, "position '" + p.owner + "' is healthy");
  }
  LiquidationOutcome out;
  out.bad_debt = max(p.debt - p.collateral_value, Decimal::zero());
  // an underwater position is only worth repaying up to its collateral
  out.debt_repaid = p.debt - out.bad_debt;
  out.collateral_seized = min(p.collateral_value, p.debt * (Decimal::one() + bonus));
  out.liquidator_profit = out.collateral_seized - out.debt_repaid;
  return out;
}

}  // namespace stablecredit::cdp
