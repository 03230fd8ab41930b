#include "stablecredit/stableswap.hpp"

#include <string>

#include "stablecredit/error.hpp"

namespace stablecredit::amm {

namespace {

using Big = boost::multiprecision::checked_int512_t;
using Unbounded = boost::multiprecision::cpp_int;

constexpr int kCoins = 2;

Big ann_of(std::uint64_t amplification) { return Big(amplification) * kCoins; }

// 4xy * (Ann*(x+y) + D - Ann*D) - D^3; zero on the invariant curve and
// increasing in either reserve along the solution branch.
Big invariant_residual(const Big& x, const Big& y, const Big& d, const Big& ann) {
  return 4 * x * y * (ann * (x + y) + d - ann * d) - d * d * d;
}

Big newton_invariant(const Big& x, const Big& y, const Big& ann) {
  const Big s = x + y;
  Big d = s;
  for (int i = 0; i < kMaxIterations; ++i) {
    Big d_p = d * d / (x * kCoins) * d / (y * kCoins);
    Big prev = d;
    Big den = (ann - 1) * d + (kCoins + 1) * d_p;
    if (den <= 0) break;
    d = (ann * s + d_p * kCoins) * d / den;
    Big diff = d > prev ? Big(d - prev) : Big(prev - d);
    if (diff <= 1) return d;
  }
  throw Error(ErrorCode::kNonConvergence, "invariant iteration did not converge");
}

Big newton_reserve(const Big& x, const Big& d, const Big& ann) {
  Big c = d * d / (x * kCoins) * d / (ann * kCoins);
  Big b = x + d / ann;
  Big y = d;
  for (int i = 0; i < kMaxIterations; ++i) {
    Big prev = y;
    Big den = 2 * y + b - d;
    if (den <= 0) break;
    y = (y * y + c) / den;
    Big diff = y > prev ? Big(y - prev) : Big(prev - y);
    if (diff <= 1) return y;
  }
  throw Error(ErrorCode::kNonConvergence, "reserve iteration did not converge");
}

Big to_big(const Decimal& d) { return Big(d.raw()); }

}  // namespace

void validate(const PoolState& pool) {
  if (!pool.stable_reserve.is_positive() || !pool.counter_reserve.is_positive()) {
    throw Error(ErrorCode::kInvalidPool, "pool reserves must be positive");
  }
  if (pool.amplification < 1) {
    throw Error(ErrorCode::kInvalidPool, "amplification must be at least 1");
  }
}

Decimal compute_invariant(const PoolState& pool) {
  validate(pool);
  try {
    Big d = newton_invariant(to_big(pool.stable_reserve), to_big(pool.counter_reserve),
                             ann_of(pool.amplification));
    return Decimal::from_raw(Decimal::Raw(d));
  } catch (const std::overflow_error&) {
    throw Error(ErrorCode::kInvalidPool, "pool reserves too large for fixed-point math");
  }
}

Decimal solve_output_reserve(const Decimal& new_input_reserve, const Decimal& invariant,
                             std::uint64_t amplification) {
  if (!new_input_reserve.is_positive() || !invariant.is_positive() || amplification < 1) {
    throw Error(ErrorCode::kInvalidPool, "reserve solve needs positive inputs");
  }
  try {
    const Big x = to_big(new_input_reserve);
    const Big d = to_big(invariant);
    const Big ann = ann_of(amplification);
    Big y = newton_reserve(x, d, ann);
    if (y < 1) y = 1;
    // Newton lands within a unit or two of the root; settle on the smallest
    // integer reserve whose residual is non-negative.
    while (invariant_residual(x, y, d, ann) < 0) ++y;
    while (y > 1 && invariant_residual(x, y - 1, d, ann) >= 0) --y;
    return Decimal::from_raw(Decimal::Raw(y));
  } catch (const std::overflow_error&) {
    throw Error(ErrorCode::kInvalidPool, "pool reserves too large for fixed-point math");
  }
}

SwapQuote swap(const PoolState& pool, const Decimal& amount_in, Direction direction) {
  validate(pool);
  if (amount_in.is_negative()) {
    throw Error(ErrorCode::kOutOfRange, "swap amount must be non-negative");
  }
  SwapQuote q;
  q.direction = direction;
  q.amount_in = amount_in;
  q.pre_state = pool;
  q.post_state = pool;

  if (!amount_in.is_zero()) {
    const bool stable_in = direction == Direction::kStableIn;
    const Decimal& in_reserve = stable_in ? pool.stable_reserve : pool.counter_reserve;
    const Decimal& out_reserve = stable_in ? pool.counter_reserve : pool.stable_reserve;

    const Decimal d = compute_invariant(pool);
    const Decimal new_in = in_reserve + amount_in;
    const Decimal new_out = solve_output_reserve(new_in, d, pool.amplification);
    if (!new_out.is_positive() || new_out <= Decimal::epsilon()) {
      throw Error(ErrorCode::kDrainedPool, "swap would drain the output reserve");
    }
    q.amount_out = new_out < out_reserve ? out_reserve - new_out : Decimal::zero();
    if (stable_in) {
      q.post_state.stable_reserve = new_in;
      q.post_state.counter_reserve = out_reserve - q.amount_out;
    } else {
      q.post_state.counter_reserve = new_in;
      q.post_state.stable_reserve = out_reserve - q.amount_out;
    }
    q.execution_price = stable_in ? q.amount_out / amount_in : amount_in / q.amount_out;
  }
  q.post_fraction_stable = fraction_stable(q.post_state);
  q.post_spot_price = spot_price(q.post_state);
  return q;
}

Decimal spot_price(const PoolState& pool) {
  validate(pool);
  const Unbounded x(pool.stable_reserve.raw());
  const Unbounded y(pool.counter_reserve.raw());
  const Unbounded d(compute_invariant(pool).raw());
  const Unbounded ann = Unbounded(pool.amplification) * kCoins;
  // ratio of the invariant's partial derivatives, dF/dx : dF/dy
  const Unbounded d3 = d * d * d;
  const Unbounded core = 4 * ann * x * x * y * y;
  const Unbounded num = core + d3 * y;
  const Unbounded den = core + d3 * x;
  const Unbounded unit(Decimal::unit());
  Unbounded scaled = num * unit / den;
  return Decimal::from_raw(Decimal::Raw(scaled));
}

Decimal fraction_stable(const PoolState& pool) {
  validate(pool);
  return pool.stable_reserve / (pool.stable_reserve + pool.counter_reserve);
}

}  // namespace stablecredit::amm
