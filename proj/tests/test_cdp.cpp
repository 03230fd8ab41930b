#include <doctest.h>

#include <random>

#include "stablecredit/cdp.hpp"
#include "stablecredit/error.hpp"
#include "stablecredit/ledger.hpp"

using namespace stablecredit;
using namespace stablecredit::literals;
using namespace stablecredit::cdp;

namespace {
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

TEST_CASE("health factor") {
  Position p{"alice", 10000_dec, 0.8_dec, 8000_dec};
  auto hf = health_factor(p);
  REQUIRE_FALSE(hf.is_unleveraged());
  CHECK(hf.value() == 1_dec);
  CHECK_FALSE(hf.below_one());
  CHECK(health_factor({"x", 10000_dec, 0.8_dec, 0_dec}).is_unleveraged());
  CHECK(health_factor({"x", 9999_dec, 0.8_dec, 8000_dec}).below_one());
  CHECK(code_of([] { health_factor({"x", 1_dec, 1.5_dec, 1_dec}); }) == ErrorCode::kRange);
}

TEST_CASE("minting respects the LTV cap") {
  Position p{"alice", 10000_dec, 0.8_dec, 0_dec};
  CHECK(mint(p, 8000_dec, 0.8_dec).debt == 8000_dec);
  CHECK(code_of([&] { mint(p, 8000.000000000000000001_dec, 0.8_dec); }) ==
        ErrorCode::kExceedsLtv);
  CHECK(code_of([&] { mint(mint(p, 5000_dec, 0.8_dec), 3001_dec, 0.8_dec); }) ==
        ErrorCode::kExceedsLtv);
}

TEST_CASE("liquidation") {
  Position healthy{"a", 10000_dec, 0.8_dec, 8000_dec};
  CHECK(code_of([&] { liquidate(healthy, 0.05_dec); }) == ErrorCode::kNotLiquidatable);

  Position under{"a", 9000_dec, 0.8_dec, 8000_dec};
  auto out = liquidate(under, 0.05_dec);
  CHECK(out.debt_repaid == 8000_dec);
  CHECK(out.collateral_seized == 8400_dec);
  CHECK(out.liquidator_profit == 400_dec);
  CHECK(out.bad_debt.is_zero());

  Position underwater{"a", 6000_dec, 0.8_dec, 8000_dec};
  auto w = liquidate(underwater, 0.05_dec);
  CHECK(w.bad_debt == 2000_dec);
  CHECK(w.collateral_seized == 6000_dec);
  CHECK(w.debt_repaid == 6000_dec);
}

TEST_CASE("liquidation never leaves bad debt next to collateral") {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int i = 0; i < 500; ++i) {
    Position p{"p", Decimal::from_double(u(g) * 20000), Decimal::from_double(u(g)),
               Decimal::from_double(u(g) * 20000)};
    if (!health_factor(p).below_one()) continue;
    auto out = liquidate(p, Decimal::from_double(u(g) * 0.2));
    Decimal remaining = p.collateral_value - out.collateral_seized;
    CHECK_FALSE((out.bad_debt.is_positive() && remaining.is_positive()));
    CHECK_FALSE(out.liquidator_profit.is_negative());
  }
}

TEST_CASE("price shocks scale the health factor") {
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  for (int i = 0; i < 200; ++i) {
    Position p{"p", Decimal::from_double(u(g) * 10000), 0.8_dec, Decimal::from_double(u(g) * 5000)};
    Decimal k = Decimal::from_double(u(g));
    Position shocked = p;
    shocked.collateral_value = p.collateral_value * k;
    Decimal expected = health_factor(p).value() * k;
    // both sides truncate once per operation
    CHECK(abs(health_factor(shocked).value() - expected) <= Decimal::parse("1e-14"));
  }
}

TEST_CASE("CDP mints are backed supply") {
  auto l = ledger::record_backed_mint({}, 8000_dec);
  CHECK(l.backed_circulating == 8000_dec);
  CHECK(l.circulating_unbacked.is_zero());
  CHECK(l.custodied_unbacked.is_zero());
}
