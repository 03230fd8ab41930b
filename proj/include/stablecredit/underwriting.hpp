#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stablecredit/decimal.hpp"
#include "stablecredit/rate_models.hpp"

namespace stablecredit::underwriting {

enum class FacilitatorKind { kLendingMarket, kPerpsVault };

struct CreditLine {
  FacilitatorKind kind = FacilitatorKind::kLendingMarket;
  Decimal size;
  /// size / core-pool counterassets; lending markets only.
  std::optional<Decimal> size_fraction;
  std::string cost_basis;

  bool operator==(const CreditLine&) const = default;
};

struct MarginPoint {
  Decimal utilization;
  Decimal external_rate;
  Decimal facilitator_rate;
  Decimal margin;  // external_rate - facilitator_rate

  bool operator==(const MarginPoint&) const = default;
};

struct UnderwritingVerdict {
  bool satisfied = true;
  /// Utilization (> 0 where available) with the smallest margin.
  Decimal binding_utilization;
  Decimal min_margin;
  /// First utilization at which the margin turns negative, located by
  /// bisection between grid points. Empty when satisfied.
  std::optional<Decimal> first_violation;
  std::vector<MarginPoint> margin_curve;

  bool operator==(const UnderwritingVerdict&) const = default;
};

inline constexpr std::size_t kDefaultGridPoints = 101;
/// Upper end of the default utilization grid (0.99).
Decimal default_grid_max();

/// `points` evenly spaced utilizations on [0, max_u].
std::vector<Decimal> uniform_grid(std::size_t points, const Decimal& max_u);

/// Compares the external market rate with the facilitator controller rate at
/// every grid utilization plus the curve's kink. A credit line of fraction
/// `x` is acceptable when borrowing from the external market never costs
/// less than the facilitator yield.
UnderwritingVerdict check_condition(const Decimal& x, const rates::PiecewiseRateParams& external,
                                    const rates::ControllerParams& controller,
                                    std::span<const Decimal> u_grid);

/// Largest credit fraction for which the external rate at u_optimal still
/// covers the controller rate:
///   rate_at_optimal = gain * X*u / (1 - X*u)  =>  X = r / (u * (gain + r)).
/// With gain 0.15 and u_optimal 0.8 this is X = 25 r / (3 + 20 r).
Decimal max_credit_fraction(const Decimal& rate_at_optimal, const Decimal& u_optimal,
                            const rates::ControllerParams& controller = {});

/// The closed-form fraction, lowered by bisection if the condition fails
/// anywhere else on the grid (for instance with a shallow second slope).
Decimal safe_credit_fraction(const rates::PiecewiseRateParams& external,
                             const rates::ControllerParams& controller,
                             std::span<const Decimal> u_grid);

Decimal credit_line_amount(const Decimal& x, const Decimal& counterassets);

/// Counterasset-denominated stablecoin volume the core pool absorbs before
/// the controller rate reaches `target_rate`.
Decimal absorbable_liquidity(const Decimal& target_rate, const rates::ControllerParams& controller,
                             const Decimal& counterassets);

/// Credit line for a perps counterparty vault such that a worst-case
/// drawdown releases at most `absorbable` unbacked stablecoins. Rounded up
/// to the last unit so that size * drawdown == absorbable.
Decimal b2s_credit_size(const Decimal& absorbable, const Decimal& worst_case_drawdown);

struct YieldBreakdown {
  Decimal credit_interest;      // borrowed * external rate
  Decimal protocol_share;       // reserve factor cut
  Decimal supplier_interest;    // credit_interest - protocol_share
  Decimal lend_interest;        // lend_supply * lend_rate
  Decimal directed_to_pool;     // supplier_interest + lend_interest
  Decimal pool_tvl;
  Decimal yield;                // directed_to_pool / pool_tvl

  bool operator==(const YieldBreakdown&) const = default;
};

YieldBreakdown endogenous_yield_breakdown(const Decimal& credit_borrowed,
                                          const Decimal& external_rate,
                                          const Decimal& reserve_factor,
                                          const Decimal& lend_supply, const Decimal& lend_rate,
                                          const Decimal& pool_tvl);

Decimal endogenous_yield(const Decimal& credit_borrowed, const Decimal& external_rate,
                         const Decimal& reserve_factor, const Decimal& lend_supply,
                         const Decimal& lend_rate, const Decimal& pool_tvl);

}  // namespace stablecredit::underwriting
