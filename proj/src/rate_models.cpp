#include "stablecredit/rate_models.hpp"

#include "stablecredit/error.hpp"

namespace stablecredit::rates {

const Decimal& ray() {
  static const Decimal v = Decimal::parse("1000000000000000000000000000");
  return v;
}

void validate(const PiecewiseRateParams& p) {
  if (!p.u_optimal.is_positive() || p.u_optimal >= Decimal::one()) {
    throw Error(ErrorCode::kRange, "u_optimal must lie in (0, 1)", "u_optimal");
  }
  if (p.slope1.is_negative()) throw Error(ErrorCode::kRange, "slope1 must be >= 0", "slope1");
  if (p.slope2.is_negative()) throw Error(ErrorCode::kRange, "slope2 must be >= 0", "slope2");
  if (p.base_rate.is_negative()) {
    throw Error(ErrorCode::kRange, "base_rate must be >= 0", "base_rate");
  }
}

void validate(const ControllerParams& p) {
  if (!p.gain.is_positive()) throw Error(ErrorCode::kRange, "gain must be > 0", "gain");
}

Decimal piecewise_rate_closed(const Decimal& u, const PiecewiseRateParams& p) {
  if (u.is_negative() || u > Decimal::one()) {
    throw Error(ErrorCode::kOutOfRange, "utilization " + u.to_string() + " outside [0, 1]");
  }
  validate(p);
  if (u <= p.u_optimal) {
    return p.base_rate + mul_div(u, p.slope1, p.u_optimal);
  }
  return p.base_rate + p.slope1 + mul_div(u - p.u_optimal, p.slope2, Decimal::one() - p.u_optimal);
}

Decimal piecewise_rate(const Decimal& u, const PiecewiseRateParams& p) {
  if (u >= Decimal::one()) {
    throw Error(ErrorCode::kOutOfRange, "utilization " + u.to_string() + " outside [0, 1)");
  }
  return piecewise_rate_closed(u, p);
}

Decimal controller_rate(const Decimal& e, const ControllerParams& p) {
  validate(p);
  if (e.is_negative()) throw Error(ErrorCode::kOutOfRange, "controller input must be >= 0");
  if (e >= Decimal::one()) {
    throw Error(ErrorCode::kDivergence,
                "controller rate diverges at E = " + e.to_string() + " (needs E < 1)");
  }
  return mul_div(p.gain, e, Decimal::one() - e);
}

Decimal e_from_credit(const Decimal& x, const Decimal& u) {
  if (x.is_negative()) throw Error(ErrorCode::kOutOfRange, "credit fraction must be >= 0");
  if (u.is_negative() || u > Decimal::one()) {
    throw Error(ErrorCode::kOutOfRange, "utilization outside [0, 1]");
  }
  Decimal e = x * u;
  if (e >= Decimal::one()) {
    throw Error(ErrorCode::kDivergence, "credit fraction times utilization reaches 1");
  }
  return e;
}

}  // namespace stablecredit::rates
