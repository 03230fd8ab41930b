#pragma once

#include "stablecredit/decimal.hpp"

namespace stablecredit::rates {

/// Kinked utilization curve of an external lending market. All rates are
/// simple annual fractions.
struct PiecewiseRateParams {
  Decimal u_optimal;
  Decimal slope1;
  Decimal slope2;
  Decimal base_rate;

  bool operator==(const PiecewiseRateParams&) const = default;
};

struct ControllerParams {
  Decimal gain = Decimal::parse("0.15");

  bool operator==(const ControllerParams&) const = default;
};

/// Scaling used by on-chain rate strategies (1e27).
const Decimal& ray();

/// Throws Error(kRange) when the parameters break their invariants.
void validate(const PiecewiseRateParams& params);
void validate(const ControllerParams& params);

/// Rate at utilization u in [0, 1). u == u_optimal is evaluated on the
/// first segment. Throws Error(kOutOfRange) outside [0, 1).
Decimal piecewise_rate(const Decimal& u, const PiecewiseRateParams& params);

/// Same curve on the closed interval [0, 1]; full utilization takes the
/// segment's endpoint value base + slope1 + slope2.
Decimal piecewise_rate_closed(const Decimal& u, const PiecewiseRateParams& params);

/// gain * e / (1 - e). Throws Error(kDivergence) for e >= 1 and
/// Error(kOutOfRange) for e < 0.
Decimal controller_rate(const Decimal& e, const ControllerParams& params);

/// Controller input when a credit line of fraction x of the core pool's
/// counterassets is borrowed at utilization u and sold into the pool.
Decimal e_from_credit(const Decimal& x, const Decimal& u);

}  // namespace stablecredit::rates
