#include <doctest.h>

#include "oracles.hpp"
#include "stablecredit/error.hpp"
#include "stablecredit/underwriting.hpp"

using namespace stablecredit;
using namespace stablecredit::literals;
using namespace stablecredit::underwriting;

namespace {

rates::PiecewiseRateParams curve(Decimal slope1 = 0.10_dec) {
  return {0.8_dec, slope1, 0.75_dec, 0_dec};
}

std::vector<Decimal> grid() { return uniform_grid(kDefaultGridPoints, default_grid_max()); }

}  // namespace

TEST_CASE("default grid") {
  auto g = grid();
  REQUIRE(g.size() == 101);
  CHECK(g.front().is_zero());
  CHECK(g.back() == 0.99_dec);
  CHECK(g[80] == 0.792_dec);
  CHECK_THROWS_AS(uniform_grid(1, 0.5_dec), Error);
  CHECK_THROWS_AS(uniform_grid(10, 1_dec), Error);
}

TEST_CASE("condition at the worked-example fraction") {
  auto v = check_condition(0.5_dec, curve(), {}, grid());
  CHECK(v.satisfied);
  CHECK(v.binding_utilization == 0.8_dec);
  CHECK(v.min_margin.is_zero());
  CHECK_FALSE(v.first_violation.has_value());
  CHECK(v.margin_curve.size() == 102);  // grid plus the kink
}

TEST_CASE("condition fails above the fraction") {
  auto v = check_condition(0.6_dec, curve(), {}, grid());
  CHECK_FALSE(v.satisfied);
  auto at_kink = std::find_if(v.margin_curve.begin(), v.margin_curve.end(),
                              [](const MarginPoint& m) { return m.utilization == 0.8_dec; });
  REQUIRE(at_kink != v.margin_curve.end());
  CHECK(at_kink->external_rate == 0.10_dec);
  CHECK(at_kink->facilitator_rate.to_double() == doctest::Approx(0.15 * 0.48 / 0.52));
  CHECK(at_kink->margin.is_negative());
  REQUIRE(v.first_violation.has_value());
  // first crossing on the first segment: 0.125 u = 0.15*0.6u/(1-0.6u) -> u = (1 - 0.72)/0.6
  CHECK(v.first_violation->to_double() == doctest::Approx((1.0 - 0.72) / 0.6).epsilon(1e-12));
}

TEST_CASE("zero credit always satisfies the condition") {
  auto v = check_condition(0_dec, curve(), {}, grid());
  CHECK(v.satisfied);
  for (const auto& m : v.margin_curve) CHECK(m.margin == m.external_rate);
}

TEST_CASE("closed-form credit fraction") {
  CHECK(max_credit_fraction(0.10_dec, 0.8_dec) == 0.5_dec);
  CHECK(max_credit_fraction(0_dec, 0.8_dec).is_zero());
  CHECK(abs(max_credit_fraction(0.30_dec, 0.8_dec) - Decimal::parse("7.5") / 9_dec) <=
        Decimal::parse("1e-17"));
  CHECK(credit_line_amount(0.5_dec, 1000000_dec) == 500000_dec);
  CHECK(credit_line_amount(0.3_dec, 0_dec).is_zero());
  CHECK(credit_line_amount(max_credit_fraction(0.30_dec, 0.8_dec), 1000000_dec).to_double() ==
        doctest::Approx(833333.333333));
}

TEST_CASE("closed form matches the reduced expression at the default gain") {
  for (const char* s : {"0.01", "0.05", "0.1", "0.2", "0.3", "0.75", "2"}) {
    Decimal r = Decimal::parse(s);
    Decimal reduced = 25_dec * r / (3_dec + 20_dec * r);
    CHECK(abs(max_credit_fraction(r, 0.8_dec) - reduced) <= Decimal::parse("1e-17"));
  }
}

TEST_CASE("closed form is the boundary of the condition at u_optimal") {
  const std::vector<Decimal> at_kink{0.8_dec};
  const Decimal eps = Decimal::parse("0.000001");
  Decimal prev = -1_dec;
  for (int i = 1; i <= 40; ++i) {
    Decimal slope1 = Decimal::from_int(i) / 100_dec;
    Decimal x = max_credit_fraction(slope1, 0.8_dec);
    CHECK(x > prev);
    CHECK(x < 1_dec / 0.8_dec);
    prev = x;
    CHECK(check_condition(x - eps, curve(slope1), {}, at_kink).satisfied);
    CHECK_FALSE(check_condition(x + eps, curve(slope1), {}, at_kink).satisfied);
    // oracle: direct substitution
    oracle::Real e = oracle::to_real(x) * oracle::Real("0.8");
    CHECK(abs(oracle::controller_rate(e, oracle::Real("0.15")) - oracle::to_real(slope1)) <
          oracle::Real("1e-15"));
  }
}

TEST_CASE("safe fraction lowers the closed form when the second slope is shallow") {
  auto g = grid();
  CHECK(safe_credit_fraction(curve(), {}, g) == 0.5_dec);
  rates::PiecewiseRateParams shallow{0.8_dec, 0.10_dec, 0.01_dec, 0_dec};
  Decimal x = safe_credit_fraction(shallow, {}, g);
  CHECK(x < 0.5_dec);
  CHECK(check_condition(x, shallow, {}, g).satisfied);
  CHECK_FALSE(check_condition(x + Decimal::parse("1e-12"), shallow, {}, g).satisfied);
}

TEST_CASE("absorbable liquidity and perps sizing") {
  CHECK(absorbable_liquidity(0.10_dec, {}, 1000000_dec) == 400000_dec);
  CHECK(absorbable_liquidity(0_dec, {}, 1000000_dec).is_zero());
  CHECK(absorbable_liquidity(0.15_dec, {}, 1000000_dec) == 500000_dec);

  Decimal size = b2s_credit_size(400000_dec, 0.06_dec);
  CHECK(abs(size - Decimal::parse("6666666.67")) <= 1_dec);
  CHECK(size * 0.06_dec == 400000_dec);
  CHECK(b2s_credit_size(123456_dec, 1_dec) == 123456_dec);
  CHECK(b2s_credit_size(0_dec, 0.06_dec).is_zero());
  CHECK_THROWS_AS(b2s_credit_size(1_dec, 0_dec), Error);
  CHECK_THROWS_AS(b2s_credit_size(1_dec, 1.01_dec), Error);
  for (const char* a : {"1", "399999.999999999999999999", "7", "1e9"}) {
    for (const char* d : {"0.06", "0.07", "0.3", "0.999999999999999999"}) {
      Decimal abs_ = Decimal::parse(a);
      CHECK(b2s_credit_size(abs_, Decimal::parse(d)) * Decimal::parse(d) == abs_);
    }
  }
}

TEST_CASE("endogenous yield") {
  auto y = endogenous_yield_breakdown(400000_dec, 0.10_dec, 0.20_dec, 1000000_dec, 0.10_dec,
                                      2000000_dec);
  CHECK(y.supplier_interest == 32000_dec);
  CHECK(y.directed_to_pool == 132000_dec);
  CHECK(y.yield == 0.066_dec);
  CHECK(endogenous_yield(0_dec, 0_dec, 0_dec, 0_dec, 0_dec, 1_dec).is_zero());
  CHECK(endogenous_yield(400000_dec, 0.10_dec, 1_dec, 1000000_dec, 0.10_dec, 2000000_dec) ==
        0.05_dec);
  CHECK_THROWS_AS(endogenous_yield(1_dec, 1_dec, 0_dec, 1_dec, 1_dec, 0_dec), Error);
}

TEST_CASE("endogenous yield is linear in each flow") {
  const Decimal base[] = {400000_dec, 0.10_dec, 0.20_dec, 1000000_dec, 0.10_dec};
  auto eval = [&](int which, const Decimal& v) {
    Decimal a[5] = {base[0], base[1], base[2], base[3], base[4]};
    a[which] = v;
    return endogenous_yield(a[0], a[1], a[2], a[3], a[4], 2000000_dec);
  };
  for (int k : {0, 3}) {
    Decimal y1 = eval(k, base[k]);
    Decimal y2 = eval(k, base[k] * 2_dec);
    Decimal y0 = eval(k, 0_dec);
    CHECK(abs((y2 - y1) - (y1 - y0)) <= Decimal::parse("1e-17"));
  }
}
