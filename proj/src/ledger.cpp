#include "stablecredit/ledger.hpp"

#include "stablecredit/error.hpp"

namespace stablecredit::ledger {

namespace {

void require_non_negative(const Decimal& amount, const char* what) {
  if (amount.is_negative()) {
    throw Error(ErrorCode::kOutOfRange, std::string(what) + " must be non-negative");
  }
}

// Supply coming back out of circulation: draw `amount` from the circulating
// buckets in the given order of preference.
SupplyLedger withdraw_circulating(SupplyLedger l, const Decimal& amount, bool unbacked_first) {
  if (l.backed_circulating + l.circulating_unbacked < amount) {
    throw Error(ErrorCode::kInsufficientReserve,
                "not enough circulating supply to return " + amount.to_string());
  }
  Decimal& first = unbacked_first ? l.circulating_unbacked : l.backed_circulating;
  Decimal& second = unbacked_first ? l.backed_circulating : l.circulating_unbacked;
  Decimal from_first = min(first, amount);
  first -= from_first;
  second -= amount - from_first;
  l.custodied_unbacked += amount;
  return l;
}

}  // namespace

void check_conservation(const SupplyLedger& l) {
  if (l.backed_circulating.is_negative() || l.custodied_unbacked.is_negative() ||
      l.circulating_unbacked.is_negative() || l.total_minted.is_negative()) {
    throw Error(ErrorCode::kArithmetic, "supply ledger bucket went negative");
  }
  if (l.backed_circulating + l.custodied_unbacked + l.circulating_unbacked != l.total_minted) {
    throw Error(ErrorCode::kArithmetic, "supply ledger partition does not sum to total_minted");
  }
}

SupplyLedger record_backed_mint(SupplyLedger l, const Decimal& amount) {
  require_non_negative(amount, "mint amount");
  l.total_minted += amount;
  l.backed_circulating += amount;
  return l;
}

SupplyLedger record_backed_burn(SupplyLedger l, const Decimal& amount) {
  require_non_negative(amount, "burn amount");
  if (l.backed_circulating < amount) {
    throw Error(ErrorCode::kInsufficientReserve, "burn exceeds backed supply");
  }
  l.total_minted -= amount;
  l.backed_circulating -= amount;
  return l;
}

SupplyLedger record_bad_debt(SupplyLedger l, const Decimal& amount) {
  require_non_negative(amount, "bad debt");
  l.redistributed_bad_debt += amount;
  return l;
}

PsmResult psm_deploy(const SupplyLedger& l, const Decimal& stable_reserve,
                     const Decimal& counter_reserve) {
  require_non_negative(stable_reserve, "PSM stable reserve");
  require_non_negative(counter_reserve, "PSM counter reserve");
  PsmResult r{{stable_reserve, counter_reserve}, l, Decimal::zero()};
  r.ledger.total_minted += stable_reserve;
  r.ledger.custodied_unbacked += stable_reserve;
  return r;
}

PsmResult psm_swap_in(const PsmState& psm, const SupplyLedger& l, const Decimal& counter_in) {
  require_non_negative(counter_in, "PSM input");
  if (counter_in > psm.stable_reserve) {
    throw Error(ErrorCode::kInsufficientReserve,
                "PSM holds " + psm.stable_reserve.to_string() + " stablecoins, asked for " +
                    counter_in.to_string());
  }
  PsmResult r{psm, l, counter_in};
  r.psm.stable_reserve -= counter_in;
  r.psm.counter_reserve += counter_in;
  r.ledger.custodied_unbacked -= counter_in;
  r.ledger.backed_circulating += counter_in;
  return r;
}

PsmResult psm_redeem(const PsmState& psm, const SupplyLedger& l, const Decimal& stable_in) {
  require_non_negative(stable_in, "PSM input");
  if (stable_in > psm.counter_reserve) {
    throw Error(ErrorCode::kInsufficientReserve,
                "PSM holds " + psm.counter_reserve.to_string() + " counterassets, asked for " +
                    stable_in.to_string());
  }
  PsmResult r{psm, withdraw_circulating(l, stable_in, false), stable_in};
  r.psm.stable_reserve += stable_in;
  r.psm.counter_reserve -= stable_in;
  return r;
}

AmoResult amo_deploy(const SupplyLedger& l, const Decimal& amount_stable,
                     const Decimal& amount_counter, std::uint64_t amplification) {
  amm::PoolState pool{amount_stable, amount_counter, amplification};
  amm::validate(pool);
  AmoResult r{{pool, amount_stable}, l};
  r.ledger.total_minted += amount_stable;
  r.ledger.custodied_unbacked += amount_stable;
  return r;
}

AmoResult amo_pool_trade(const LiquidityAmoState& amo, const SupplyLedger& l,
                         const amm::SwapQuote& quote) {
  if (!(quote.pre_state == amo.pool)) {
    throw Error(ErrorCode::kStaleQuote, "quote was priced against a different pool state");
  }
  AmoResult r{amo, l};
  r.amo.pool = quote.post_state;
  if (quote.direction == amm::Direction::kCounterIn) {
    if (r.ledger.custodied_unbacked < quote.amount_out) {
      throw Error(ErrorCode::kInsufficientReserve, "pool releases more than custody holds");
    }
    r.ledger.custodied_unbacked -= quote.amount_out;
    r.ledger.backed_circulating += quote.amount_out;
    r.amo.deployed_unbacked = max(r.amo.deployed_unbacked - quote.amount_out, Decimal::zero());
  } else {
    r.ledger = withdraw_circulating(l, quote.amount_in, true);
    r.amo.deployed_unbacked += quote.amount_in;
  }
  return r;
}

LendingResult lending_open(const SupplyLedger& l, const Decimal& credit_line,
                           const rates::PiecewiseRateParams& params,
                           const Decimal& reserve_factor) {
  require_non_negative(credit_line, "credit line");
  rates::validate(params);
  if (reserve_factor.is_negative() || reserve_factor > Decimal::one()) {
    throw Error(ErrorCode::kRange, "reserve factor must lie in [0, 1]");
  }
  LendingResult r{{credit_line, Decimal::zero(), params, reserve_factor}, l, {}, {}};
  r.ledger.total_minted += credit_line;
  r.ledger.custodied_unbacked += credit_line;
  return r;
}

LendingResult lending_step(const LendingMarketState& market, const SupplyLedger& l,
                           const Decimal& borrow_delta, const Decimal& dt_years) {
  require_non_negative(dt_years, "time step");
  Decimal borrowed = market.borrowed + borrow_delta;
  if (borrowed > market.credit_line) {
    throw Error(ErrorCode::kExceedsCreditLine,
                "borrowing " + borrowed.to_string() + " exceeds credit line " +
                    market.credit_line.to_string());
  }
  if (borrowed.is_negative()) {
    throw Error(ErrorCode::kOutOfRange, "repayment exceeds outstanding borrowing");
  }

  LendingResult r{market, l, {}, {}};
  r.market.borrowed = borrowed;
  if (borrow_delta.is_positive()) {
    r.ledger.custodied_unbacked -= borrow_delta;
    r.ledger.circulating_unbacked += borrow_delta;
    r.ledger.externally_collateralized += borrow_delta;
  } else if (borrow_delta.is_negative()) {
    Decimal repaid = -borrow_delta;
    r.ledger = withdraw_circulating(l, repaid, true);
    r.ledger.externally_collateralized =
        max(r.ledger.externally_collateralized - repaid, Decimal::zero());
  }

  Decimal rate = rates::piecewise_rate_closed(r.market.utilization(), market.rate_params);
  r.interest_accrued = borrowed * rate * dt_years;
  r.protocol_share = r.interest_accrued * market.reserve_factor;
  return r;
}

PerpsResult perps_open(const SupplyLedger& l, const Decimal& credit_line) {
  require_non_negative(credit_line, "credit line");
  PerpsResult r{{credit_line, credit_line, Decimal::zero(), credit_line}, l, {}, {}, {}};
  r.ledger.total_minted += credit_line;
  r.ledger.custodied_unbacked += credit_line;
  return r;
}

PerpsResult perps_step(const PerpsVaultState& vault, const SupplyLedger& l,
                       const Decimal& trader_pnl) {
  PerpsResult r{vault, l, {}, {}, {}};
  if (trader_pnl.is_positive()) {
    r.paid = min(trader_pnl, vault.vault_assets);
    r.shortfall = trader_pnl - r.paid;
    r.vault.vault_assets -= r.paid;
    r.vault.open_liability += r.shortfall;
    // Unbacked custody pays first; any remainder is backed supply that
    // losing traders paid in earlier.
    Decimal from_custody = min(r.paid, vault.custodied);
    r.vault.custodied -= from_custody;
    r.ledger.custodied_unbacked -= from_custody;
    r.ledger.circulating_unbacked += from_custody;
  } else if (trader_pnl.is_negative()) {
    r.received = -trader_pnl;
    r.vault.vault_assets += r.received;
    Decimal to_custody = min(r.received, l.circulating_unbacked);
    r.vault.custodied += to_custody;
    r.ledger.circulating_unbacked -= to_custody;
    r.ledger.custodied_unbacked += to_custody;
  }
  return r;
}

BackfillResult backfill(const PerpsVaultState& /*vault*/, const SupplyLedger& l,
                        const Decimal& fund) {
  require_non_negative(fund, "backfill fund");
  BackfillResult r{l, min(fund, l.circulating_unbacked), {}};
  r.unused = fund - r.used;
  r.ledger.circulating_unbacked -= r.used;
  r.ledger.backed_circulating += r.used;
  return r;
}

}  // namespace stablecredit::ledger
