#include "stablecredit/underwriting.hpp"

#include <algorithm>

#include "stablecredit/error.hpp"

namespace stablecredit::underwriting {

namespace {

using rates::ControllerParams;
using rates::PiecewiseRateParams;

Decimal margin_at(const Decimal& u, const Decimal& x, const PiecewiseRateParams& external,
                  const ControllerParams& controller) {
  return rates::piecewise_rate(u, external) -
         rates::controller_rate(rates::e_from_credit(x, u), controller);
}

std::vector<Decimal> evaluation_points(std::span<const Decimal> grid,
                                       const PiecewiseRateParams& external) {
  if (grid.empty()) throw Error(ErrorCode::kOutOfRange, "utilization grid is empty");
  std::vector<Decimal> pts(grid.begin(), grid.end());
  for (const auto& u : pts) {
    if (u.is_negative() || u >= Decimal::one()) {
      throw Error(ErrorCode::kOutOfRange, "grid utilization " + u.to_string() + " outside [0, 1)");
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  // The kink is where a convex controller curve first overtakes the
  // external curve's first segment, so it is always evaluated.
  if (external.u_optimal >= pts.front() && external.u_optimal <= pts.back() &&
      !std::binary_search(pts.begin(), pts.end(), external.u_optimal)) {
    pts.insert(std::lower_bound(pts.begin(), pts.end(), external.u_optimal), external.u_optimal);
  }
  return pts;
}

bool satisfied_at(const Decimal& x, const PiecewiseRateParams& external,
                  const ControllerParams& controller, std::span<const Decimal> grid) {
  Decimal top = *std::max_element(grid.begin(), grid.end());
  if (x * top >= Decimal::one()) return false;
  return check_condition(x, external, controller, grid).satisfied;
}

}  // namespace

Decimal default_grid_max() { return Decimal::parse("0.99"); }

std::vector<Decimal> uniform_grid(std::size_t points, const Decimal& max_u) {
  if (points < 2) throw Error(ErrorCode::kRange, "grid needs at least two points");
  if (max_u.is_negative() || max_u >= Decimal::one()) {
    throw Error(ErrorCode::kRange, "grid maximum must lie in [0, 1)");
  }
  std::vector<Decimal> grid;
  grid.reserve(points);
  const Decimal last = Decimal::from_int(static_cast<std::int64_t>(points - 1));
  for (std::size_t i = 0; i < points; ++i) {
    grid.push_back(mul_div(max_u, Decimal::from_int(static_cast<std::int64_t>(i)), last));
  }
  return grid;
}

UnderwritingVerdict check_condition(const Decimal& x, const PiecewiseRateParams& external,
                                    const ControllerParams& controller,
                                    std::span<const Decimal> u_grid) {
  rates::validate(external);
  rates::validate(controller);
  if (x.is_negative()) throw Error(ErrorCode::kOutOfRange, "credit fraction must be >= 0");
  const auto pts = evaluation_points(u_grid, external);

  UnderwritingVerdict v;
  v.margin_curve.reserve(pts.size());
  std::optional<std::size_t> binding;
  std::optional<std::size_t> violation;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Decimal& u = pts[i];
    MarginPoint mp;
    mp.utilization = u;
    mp.external_rate = rates::piecewise_rate(u, external);
    mp.facilitator_rate = rates::controller_rate(rates::e_from_credit(x, u), controller);
    mp.margin = mp.external_rate - mp.facilitator_rate;
    if (mp.margin.is_negative() && !violation) violation = i;
    // u = 0 is degenerate (nothing borrowed) and only binds if it is the
    // sole point.
    bool eligible = u.is_positive() || pts.size() == 1;
    if (eligible && (!binding || mp.margin < v.margin_curve[*binding].margin)) binding = i;
    v.margin_curve.push_back(std::move(mp));
  }
  if (!binding) binding = 0;
  v.binding_utilization = v.margin_curve[*binding].utilization;
  v.min_margin = v.margin_curve[*binding].margin;
  for (const auto& mp : v.margin_curve) v.min_margin = min(v.min_margin, mp.margin);
  v.satisfied = !violation.has_value();

  if (violation) {
    if (*violation == 0) {
      v.first_violation = pts[0];
    } else {
      Decimal lo = pts[*violation - 1];  // margin >= 0
      Decimal hi = pts[*violation];      // margin < 0
      const Decimal tol = Decimal::parse("0.000000000000001");
      const Decimal two = Decimal::from_int(2);
      while (hi - lo > tol) {
        Decimal mid = (lo + hi) / two;
        if (margin_at(mid, x, external, controller).is_negative()) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      v.first_violation = hi;
    }
  }
  return v;
}

Decimal max_credit_fraction(const Decimal& rate_at_optimal, const Decimal& u_optimal,
                            const ControllerParams& controller) {
  rates::validate(controller);
  if (rate_at_optimal.is_negative()) throw Error(ErrorCode::kOutOfRange, "rate must be >= 0");
  if (!u_optimal.is_positive() || u_optimal >= Decimal::one()) {
    throw Error(ErrorCode::kOutOfRange, "u_optimal must lie in (0, 1)");
  }
  return rate_at_optimal / (u_optimal * (controller.gain + rate_at_optimal));
}

Decimal safe_credit_fraction(const PiecewiseRateParams& external,
                             const ControllerParams& controller,
                             std::span<const Decimal> u_grid) {
  rates::validate(external);
  Decimal hi = max_credit_fraction(external.base_rate + external.slope1, external.u_optimal,
                                   controller);
  if (satisfied_at(hi, external, controller, u_grid)) return hi;
  // the condition only gets harder as x grows, so the feasible set is [0, x*]
  Decimal lo = Decimal::zero();
  const Decimal tol = Decimal::parse("0.000000000000001");
  const Decimal two = Decimal::from_int(2);
  while (hi - lo > tol) {
    Decimal mid = (lo + hi) / two;
    if (satisfied_at(mid, external, controller, u_grid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

Decimal credit_line_amount(const Decimal& x, const Decimal& counterassets) {
  if (x.is_negative() || counterassets.is_negative()) {
    throw Error(ErrorCode::kOutOfRange, "credit line inputs must be >= 0");
  }
  return x * counterassets;
}

Decimal absorbable_liquidity(const Decimal& target_rate, const ControllerParams& controller,
                             const Decimal& counterassets) {
  rates::validate(controller);
  if (target_rate.is_negative()) throw Error(ErrorCode::kOutOfRange, "target rate must be >= 0");
  Decimal e = target_rate / (controller.gain + target_rate);
  return e * counterassets;
}

Decimal b2s_credit_size(const Decimal& absorbable, const Decimal& worst_case_drawdown) {
  if (!worst_case_drawdown.is_positive() || worst_case_drawdown > Decimal::one()) {
    throw Error(ErrorCode::kOutOfRange, "worst-case drawdown must lie in (0, 1]");
  }
  if (absorbable.is_negative()) throw Error(ErrorCode::kOutOfRange, "absorbable must be >= 0");
  using Wide = Decimal::Wide;
  Wide num = Wide(absorbable.raw()) * Wide(Decimal::unit());
  Wide den = Wide(worst_case_drawdown.raw());
  Wide q = num / den;
  if (q * den != num) q += 1;
  return Decimal::from_raw(Decimal::Raw(q));
}

YieldBreakdown endogenous_yield_breakdown(const Decimal& credit_borrowed,
                                          const Decimal& external_rate,
                                          const Decimal& reserve_factor,
                                          const Decimal& lend_supply, const Decimal& lend_rate,
                                          const Decimal& pool_tvl) {
  if (!pool_tvl.is_positive()) throw Error(ErrorCode::kOutOfRange, "pool TVL must be > 0");
  YieldBreakdown y;
  y.credit_interest = credit_borrowed * external_rate;
  y.protocol_share = y.credit_interest * reserve_factor;
  y.supplier_interest = y.credit_interest - y.protocol_share;
  y.lend_interest = lend_supply * lend_rate;
  y.directed_to_pool = y.supplier_interest + y.lend_interest;
  y.pool_tvl = pool_tvl;
  y.yield = y.directed_to_pool / pool_tvl;
  return y;
}

Decimal endogenous_yield(const Decimal& credit_borrowed, const Decimal& external_rate,
                         const Decimal& reserve_factor, const Decimal& lend_supply,
                         const Decimal& lend_rate, const Decimal& pool_tvl) {
  return endogenous_yield_breakdown(credit_borrowed, external_rate, reserve_factor, lend_supply,
                                    lend_rate, pool_tvl)
      .yield;
}

}  // namespace stablecredit::underwriting
