#pragma once

#include <cstdint>

#include "stablecredit/decimal.hpp"

namespace stablecredit::amm {

/// Two-asset StableSwap pool. `amplification` is the on-chain Curve `A`
/// parameter: the invariant's leverage coefficient is Ann = A * n with n = 2.
struct PoolState {
  Decimal stable_reserve;
  Decimal counter_reserve;
  std::uint64_t amplification = 1;

  bool operator==(const PoolState&) const = default;
};

enum class Direction { kStableIn, kCounterIn };

struct SwapQuote {
  Direction direction = Direction::kStableIn;
  Decimal amount_in;
  Decimal amount_out;
  PoolState pre_state;
  PoolState post_state;
  Decimal post_fraction_stable;
  /// Marginal price of the stablecoin in counterassets after the trade.
  Decimal post_spot_price;
  /// Average price realised by the trade, in counterassets per stablecoin.
  /// Zero for an empty trade.
  Decimal execution_price;

  bool operator==(const SwapQuote&) const = default;
};

inline constexpr int kMaxIterations = 255;

/// Throws Error(kInvalidPool) for non-positive reserves or A < 1.
void validate(const PoolState& pool);

/// Invariant D of the pool, to within one fixed-point unit.
Decimal compute_invariant(const PoolState& pool);

/// Reserve on the output side that keeps D fixed once the input-side
/// reserve becomes `new_input_reserve`. Rounded up to the smallest unit
/// that does not lower the invariant, so traders never gain from rounding.
Decimal solve_output_reserve(const Decimal& new_input_reserve, const Decimal& invariant,
                             std::uint64_t amplification);

/// Zero-fee swap holding D fixed.
SwapQuote swap(const PoolState& pool, const Decimal& amount_in, Direction direction);

/// Marginal counterassets received per stablecoin for an infinitesimal
/// stable-in trade.
Decimal spot_price(const PoolState& pool);

Decimal fraction_stable(const PoolState& pool);

}  // namespace stablecredit::amm
