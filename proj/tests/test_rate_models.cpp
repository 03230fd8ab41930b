#include <doctest.h>

#include "stablecredit/error.hpp"
#include "stablecredit/rate_models.hpp"

using namespace stablecredit;
using namespace stablecredit::literals;
using namespace stablecredit::rates;

namespace {
PiecewiseRateParams curve() { return {0.8_dec, 0.10_dec, 0.75_dec, 0_dec}; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::kArithmetic;
}
}  // namespace

TEST_CASE("piecewise curve") {
  CHECK(piecewise_rate(0.8_dec, curve()) == 0.10_dec);
  CHECK(piecewise_rate(0_dec, curve()).is_zero());
  CHECK(piecewise_rate(0.9_dec, curve()) == 0.475_dec);
  CHECK(piecewise_rate(0.4_dec, curve()) == 0.05_dec);
  CHECK(piecewise_rate(0.8_dec, {0.8_dec, 0.10_dec, 0.75_dec, 0.02_dec}) == 0.12_dec);
  CHECK(code_of([] { piecewise_rate(1_dec, curve()); }) == ErrorCode::kOutOfRange);
  CHECK(code_of([] { piecewise_rate(-0.1_dec, curve()); }) == ErrorCode::kOutOfRange);
  CHECK(piecewise_rate_closed(1_dec, curve()) == 0.85_dec);
}

TEST_CASE("piecewise curve is monotone and continuous") {
  Decimal prev = -1_dec;
  for (int i = 0; i < 1000; ++i) {
    Decimal u = Decimal::from_int(i) / 1000_dec;
    Decimal r = piecewise_rate(u, curve());
    CHECK(r >= prev);
    prev = r;
  }
  Decimal eps = Decimal::parse("1e-12");
  CHECK(abs(piecewise_rate(0.8_dec + eps, curve()) - piecewise_rate(0.8_dec, curve())) <
        Decimal::parse("1e-10"));
  CHECK(abs(piecewise_rate(0.8_dec - eps, curve()) - piecewise_rate(0.8_dec, curve())) <
        Decimal::parse("1e-10"));
}

TEST_CASE("controller transfer function") {
  ControllerParams c;
  CHECK(c.gain == 0.15_dec);
  CHECK(controller_rate(0_dec, c).is_zero());
  CHECK(controller_rate(0.4_dec, c) == 0.10_dec);
  CHECK(controller_rate(0.5_dec, c) == 0.15_dec);
  CHECK(code_of([&] { controller_rate(1_dec, c); }) == ErrorCode::kDivergence);
  CHECK(code_of([&] { controller_rate(-0.1_dec, c); }) == ErrorCode::kOutOfRange);
  CHECK(controller_rate(0.99_dec, c) > controller_rate(0.9_dec, c));
  CHECK(controller_rate(0.9_dec, c) > 10_dec * controller_rate(0.4_dec, c));
}

TEST_CASE("controller curve is convex") {
  ControllerParams c;
  for (int i = 1; i < 98; ++i) {
    Decimal a = Decimal::from_int(i - 1) / 100_dec;
    Decimal b = Decimal::from_int(i) / 100_dec;
    Decimal d = Decimal::from_int(i + 1) / 100_dec;
    CHECK(controller_rate(a, c) + controller_rate(d, c) >= 2_dec * controller_rate(b, c));
  }
}

TEST_CASE("controller input from credit fraction") {
  CHECK(e_from_credit(0.5_dec, 0.8_dec) == 0.4_dec);
  CHECK(e_from_credit(0_dec, 0.7_dec).is_zero());
  CHECK(code_of([] { e_from_credit(2_dec, 0.6_dec); }) == ErrorCode::kDivergence);
}

TEST_CASE("parameter validation") {
  CHECK(code_of([] { validate(PiecewiseRateParams{1.2_dec, 0.1_dec, 0_dec, 0_dec}); }) ==
        ErrorCode::kRange);
  CHECK(code_of([] { validate(PiecewiseRateParams{0.8_dec, -0.1_dec, 0_dec, 0_dec}); }) ==
        ErrorCode::kRange);
  CHECK(code_of([] { validate(ControllerParams{0_dec}); }) == ErrorCode::kRange);
  CHECK(ray() == Decimal::parse("1e27"));
  CHECK(Decimal::parse("1e26") / ray() == 0.1_dec);
}
