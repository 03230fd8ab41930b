#pragma once

// Reference computations used only by the tests. They share nothing with the
// engine beyond Decimal's raw representation: floating point is 60-digit
// boost cpp_dec_float and roots are found by plain bisection.

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "stablecredit/decimal.hpp"

namespace oracle {

using Real = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<60>>;

inline Real to_real(const stablecredit::Decimal& d) {
  return Real(d.raw().str()) / Real("1e18");
}

// Two-coin StableSwap in the form
//   Ann*(x + y) + D = Ann*D + D^3 / (4 x y),   Ann = 2A
inline Real invariant_residual(const Real& x, const Real& y, const Real& d, const Real& ann) {
  return ann * (x + y) + d - ann * d - d * d * d / (4 * x * y);
}

/// D by bisection on [0, x + y]; the residual is decreasing in D there.
inline Real invariant(const Real& x, const Real& y, std::uint64_t amplification) {
  const Real ann = 2 * Real(amplification);
  Real lo = 0, hi = x + y;
  for (int i = 0; i < 200; ++i) {
    Real mid = (lo + hi) / 2;
    if (invariant_residual(x, y, mid, ann) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

/// Reserve y that keeps D fixed when the other reserve is x; the residual is
/// increasing in y.
inline Real solve_y(const Real& x, const Real& d, std::uint64_t amplification) {
  const Real ann = 2 * Real(amplification);
  Real lo = Real("1e-30"), hi = d * 4;
  while (invariant_residual(x, hi, d, ann) < 0) hi *= 2;
  for (int i = 0; i < 260; ++i) {
    Real mid = (lo + hi) / 2;
    if (invariant_residual(x, mid, d, ann) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

/// Exact real-valued output for `amount_in` added to the `in_reserve` side.
inline Real swap_out(const Real& in_reserve, const Real& out_reserve, const Real& amount_in,
                     std::uint64_t amplification) {
  Real d = invariant(in_reserve, out_reserve, amplification);
  return out_reserve - solve_y(in_reserve + amount_in, d, amplification);
}

/// Marginal stable price by central difference of the invariant curve.
inline Real spot_price_fd(const Real& stable, const Real& counter, std::uint64_t amplification,
                          const Real& h) {
  Real d = invariant(stable, counter, amplification);
  Real up = solve_y(stable + h, d, amplification);
  Real down = solve_y(stable - h, d, amplification);
  return (down - up) / (2 * h);
}

inline Real controller_rate(const Real& e, const Real& gain) { return gain * e / (1 - e); }

/// Probability that a walk of `steps` independent +win/-loss trader P&L
/// draws ever takes cumulative trader profit above zero, by enumerating
/// every outcome sequence.
inline double ever_positive_probability(int steps, double p_win, std::int64_t win,
                                        std::int64_t loss) {
  double total = 0.0;
  const std::uint64_t n = std::uint64_t{1} << steps;
  for (std::uint64_t mask = 0; mask < n; ++mask) {
    std::int64_t cum = 0;
    bool hit = false;
    int wins = 0;
    for (int t = 0; t < steps; ++t) {
      if (mask >> t & 1) {
        cum += win;
        ++wins;
      } else {
        cum -= loss;
      }
      if (cum > 0) hit = true;
    }
    if (hit) {
      double pr = 1.0;
      for (int t = 0; t < wins; ++t) pr *= p_win;
      for (int t = wins; t < steps; ++t) pr *= 1.0 - p_win;
      total += pr;
    }
  }
  return total;
}

}  // namespace oracle
