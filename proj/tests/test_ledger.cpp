#include <doctest.h>

#include <random>

#include "stablecredit/error.hpp"
#include "stablecredit/ledger.hpp"

using namespace stablecredit;
using namespace stablecredit::literals;
using namespace stablecredit::ledger;

namespace {

rates::PiecewiseRateParams worked_curve() { return {0.8_dec, 0.10_dec, 0.75_dec, 0_dec}; }

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

TEST_CASE("PSM swap in and redeem") {
  auto d = psm_deploy({}, 1000_dec, 0_dec);
  CHECK(d.ledger.custodied_unbacked == 1000_dec);
  auto in = psm_swap_in(d.psm, d.ledger, 100_dec);
  CHECK(in.amount_out == 100_dec);
  CHECK(in.ledger.backed_circulating == 100_dec);
  CHECK(in.ledger.custodied_unbacked == 900_dec);
  CHECK(in.psm.counter_reserve == 100_dec);

  auto out = psm_redeem(in.psm, in.ledger, 100_dec);
  CHECK(out.amount_out == 100_dec);
  CHECK(out.ledger == d.ledger);
  CHECK(out.psm == d.psm);

  auto none = psm_swap_in(d.psm, d.ledger, 0_dec);
  CHECK(none.ledger == d.ledger);

  auto small = psm_deploy({}, 50_dec, 0_dec);
  CHECK(code_of([&] { psm_swap_in(small.psm, small.ledger, 100_dec); }) ==
        ErrorCode::kInsufficientReserve);
  CHECK(code_of([&] { psm_redeem(in.psm, in.ledger, 101_dec); }) ==
        ErrorCode::kInsufficientReserve);
}

TEST_CASE("AMO deployment and trades") {
  auto d = amo_deploy({}, 1000000_dec, 1000000_dec, 100);
  CHECK(d.amo.pool == amm::PoolState{1000000_dec, 1000000_dec, 100});
  CHECK(d.ledger.circulating_unbacked.is_zero());
  CHECK(d.ledger.custodied_unbacked == 1000000_dec);
  CHECK(code_of([] { amo_deploy({}, 0_dec, 1_dec, 100); }) == ErrorCode::kInvalidPool);

  auto q = amm::swap(d.amo.pool, 100_dec, amm::Direction::kCounterIn);
  auto t = amo_pool_trade(d.amo, d.ledger, q);
  CHECK(t.ledger.backed_circulating == q.amount_out);
  CHECK(t.ledger.custodied_unbacked == 1000000_dec - q.amount_out);
  CHECK(t.amo.pool == q.post_state);

  // The worked-example sale: buyers need the stablecoins first.
  auto l = record_backed_mint(d.ledger, 400000_dec);
  auto sell = amm::swap(d.amo.pool, 400000_dec, amm::Direction::kStableIn);
  auto s = amo_pool_trade(d.amo, l, sell);
  CHECK(s.ledger.custodied_unbacked == l.custodied_unbacked + 400000_dec);
  CHECK(amm::fraction_stable(s.amo.pool).to_double() == doctest::Approx(0.70).epsilon(0.015));

  CHECK(code_of([&] { amo_pool_trade(t.amo, t.ledger, q); }) == ErrorCode::kStaleQuote);
}

TEST_CASE("lending step accrues interest at the post-move utilization") {
  auto o = lending_open({}, 500000_dec, worked_curve(), 0.2_dec);
  auto r = lending_step(o.market, o.ledger, 400000_dec, 1_dec);
  CHECK(r.market.utilization() == 0.8_dec);
  CHECK(r.interest_accrued == 40000_dec);
  CHECK(r.protocol_share == 8000_dec);
  CHECK(r.interest_accrued - r.protocol_share == 32000_dec);
  CHECK(r.ledger.circulating_unbacked == 400000_dec);
  CHECK(r.ledger.externally_collateralized == 400000_dec);
  CHECK(r.ledger.custodied_unbacked == 100000_dec);

  auto same = lending_step(o.market, o.ledger, 0_dec, 0_dec);
  CHECK(same.market == o.market);
  CHECK(same.ledger == o.ledger);
  CHECK(same.interest_accrued.is_zero());

  CHECK(code_of([&] { lending_step(o.market, o.ledger, 500001_dec, 1_dec); }) ==
        ErrorCode::kExceedsCreditLine);

  auto back = lending_step(r.market, r.ledger, -400000_dec, 0_dec);
  CHECK(back.ledger.circulating_unbacked.is_zero());
  CHECK(back.ledger.externally_collateralized.is_zero());
  CHECK(back.ledger.custodied_unbacked == 500000_dec);

  auto full = lending_step(o.market, o.ledger, 500000_dec, 1_dec);
  CHECK(full.interest_accrued == 500000_dec * 0.85_dec);
}

TEST_CASE("perps vault settlement") {
  auto o = perps_open({}, 1000000_dec);
  auto win = perps_step(o.vault, o.ledger, 10000_dec);
  CHECK(win.vault.vault_assets == 990000_dec);
  CHECK(win.ledger.circulating_unbacked == 10000_dec);
  CHECK(win.vault.collateralization() == 0.99_dec);

  auto loss = perps_step(o.vault, o.ledger, -10000_dec);
  CHECK(loss.vault.vault_assets == 1010000_dec);

  auto undo = perps_step(win.vault, win.ledger, -10000_dec);
  CHECK(undo.vault.vault_assets == o.vault.vault_assets);
  CHECK(undo.ledger == o.ledger);

  PerpsVaultState thin{1000000_dec, 5000_dec, 0_dec, 5000_dec};
  SupplyLedger l{0_dec, 5000_dec, 0_dec, 5000_dec, 0_dec, 0_dec};
  auto floor = perps_step(thin, l, 10000_dec);
  CHECK(floor.vault.vault_assets.is_zero());
  CHECK(floor.shortfall == 5000_dec);
  CHECK(floor.vault.open_liability == 5000_dec);
  CHECK(floor.ledger.circulating_unbacked == 5000_dec);
}

TEST_CASE("backfill") {
  SupplyLedger l{0_dec, 0_dec, 10000_dec, 10000_dec, 0_dec, 0_dec};
  auto all = backfill({}, l, 10000_dec);
  CHECK(all.ledger.circulating_unbacked.is_zero());
  CHECK(all.ledger.backed_circulating == 10000_dec);
  CHECK(backfill({}, l, 0_dec).ledger == l);
  auto capped = backfill({}, l, 15000_dec);
  CHECK(capped.used == 10000_dec);
  CHECK(capped.unused == 5000_dec);
}

TEST_CASE("bad debt stays backed and is annotated") {
  auto l = record_backed_mint({}, 1000_dec);
  auto b = record_bad_debt(l, 200_dec);
  CHECK(b.circulating_unbacked.is_zero());
  CHECK(b.redistributed_bad_debt == 200_dec);
  CHECK_NOTHROW(check_conservation(b));
}

TEST_CASE("conservation over random operation sequences") {
  std::mt19937_64 g(2024);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  auto amount = [&](const Decimal& cap) { return cap * Decimal::from_double(frac(g)); };

  SupplyLedger l;
  auto amo = amo_deploy(l, 1000000_dec, 1000000_dec, 100);
  l = amo.ledger;
  auto psm = psm_deploy(l, 500000_dec, 200000_dec);
  l = psm.ledger;
  auto lend = lending_open(l, 500000_dec, worked_curve(), 0.2_dec);
  l = lend.ledger;
  auto perps = perps_open(l, 2000000_dec);
  l = perps.ledger;
  auto market = lend.market;
  auto vault = perps.vault;
  auto pool = amo.amo;
  auto reserve = psm.psm;

  int steps = 0;
  while (steps < 10000) {
    const int op = static_cast<int>(g() % 9);
    const Decimal before = l.circulating_unbacked;
    bool issuance_path = false;
    try {
      switch (op) {
        case 0: l = record_backed_mint(l, amount(1000_dec)); break;
        case 1: l = record_backed_burn(l, amount(l.backed_circulating)); break;
        case 2: {
          auto r = psm_swap_in(reserve, l, amount(reserve.stable_reserve));
          reserve = r.psm;
          l = r.ledger;
          break;
        }
        case 3: {
          auto r = psm_redeem(reserve, l, amount(min(reserve.counter_reserve, l.backed_circulating + l.circulating_unbacked)));
          reserve = r.psm;
          l = r.ledger;
          break;
        }
        case 4: {
          auto dir = g() % 2 ? amm::Direction::kStableIn : amm::Direction::kCounterIn;
          Decimal cap = dir == amm::Direction::kStableIn
                            ? min(l.backed_circulating + l.circulating_unbacked, 50000_dec)
                            : 50000_dec;
          auto q = amm::swap(pool.pool, amount(cap), dir);
          auto r = amo_pool_trade(pool, l, q);
          pool = r.amo;
          l = r.ledger;
          break;
        }
        case 5: {
          issuance_path = true;
          Decimal target = market.credit_line * Decimal::from_double(frac(g));
          Decimal delta = target - market.borrowed;
          if (delta.is_negative() && l.backed_circulating + l.circulating_unbacked < -delta) break;
          auto r = lending_step(market, l, delta, Decimal::parse("0.0027"));
          market = r.market;
          l = r.ledger;
          break;
        }
        case 6:
        case 7: {
          issuance_path = true;
          Decimal pnl = Decimal::from_double((frac(g) - 0.5) * 40000.0);
          auto r = perps_step(vault, l, pnl);
          vault = r.vault;
          l = r.ledger;
          break;
        }
        case 8: l = backfill(vault, l, amount(20000_dec)).ledger; break;
      }
    } catch (const Error& e) {
      CHECK(e.code() != ErrorCode::kArithmetic);
    }
    REQUIRE_NOTHROW(check_conservation(l));
    if (!issuance_path) CHECK(l.circulating_unbacked <= before);
    ++steps;
  }
}
