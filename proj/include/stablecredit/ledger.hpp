#pragma once

#include "stablecredit/decimal.hpp"
#include "stablecredit/rate_models.hpp"
#include "stablecredit/stableswap.hpp"

namespace stablecredit::ledger {

/// Partition of every minted stablecoin by backing state.
///
///   total_minted = backed_circulating + custodied_unbacked + circulating_unbacked
///
/// `externally_collateralized` is an annotation, not a fourth bucket: it is
/// the outstanding amount borrowed from external lending markets, which the
/// ledger counts as circulating_unbacked even though the borrowers posted
/// collateral elsewhere.
struct SupplyLedger {
  Decimal backed_circulating;
  Decimal custodied_unbacked;
  Decimal circulating_unbacked;
  Decimal total_minted;
  Decimal externally_collateralized;
  /// CDP debt left uncovered by liquidation and spread over the remaining
  /// book. The supply stays classified as backed.
  Decimal redistributed_bad_debt;

  bool operator==(const SupplyLedger&) const = default;
};

/// Throws Error(kArithmetic) if the partition does not sum to total_minted
/// or any bucket is negative.
void check_conservation(const SupplyLedger& l);

/// Supply minted against CDP collateral; always backed.
SupplyLedger record_backed_mint(SupplyLedger l, const Decimal& amount);
/// Backed supply repaid and burned.
SupplyLedger record_backed_burn(SupplyLedger l, const Decimal& amount);
/// CDP debt whose collateral vanished; recorded in redistributed_bad_debt.
SupplyLedger record_bad_debt(SupplyLedger l, const Decimal& amount);

// --- Peg stability module -------------------------------------------------

struct PsmState {
  Decimal stable_reserve;   // custodied, unbacked
  Decimal counter_reserve;

  bool operator==(const PsmState&) const = default;
};

struct PsmResult {
  PsmState psm;
  SupplyLedger ledger;
  Decimal amount_out;
};

/// Mints `stable_reserve` into PSM custody.
PsmResult psm_deploy(const SupplyLedger& l, const Decimal& stable_reserve,
                     const Decimal& counter_reserve);
/// Counterassets in, stablecoins out 1:1. The released supply becomes backed.
PsmResult psm_swap_in(const PsmState& psm, const SupplyLedger& l, const Decimal& counter_in);
/// Stablecoins in, counterassets out 1:1. The returned supply goes back
/// into custody.
PsmResult psm_redeem(const PsmState& psm, const SupplyLedger& l, const Decimal& stable_in);

// --- Liquidity AMO ----------------------------------------------------------

struct LiquidityAmoState {
  amm::PoolState pool;
  Decimal deployed_unbacked;

  bool operator==(const LiquidityAmoState&) const = default;
};

struct AmoResult {
  LiquidityAmoState amo;
  SupplyLedger ledger;
};

AmoResult amo_deploy(const SupplyLedger& l, const Decimal& amount_stable,
                     const Decimal& amount_counter, std::uint64_t amplification);

/// Applies a quote produced by amm::swap against amo.pool. Counter-in trades
/// release backed supply; stable-in trades return supply to custody, drawing
/// on circulating_unbacked first. Throws Error(kStaleQuote) when the quote
/// was priced against a different pool state.
AmoResult amo_pool_trade(const LiquidityAmoState& amo, const SupplyLedger& l,
                         const amm::SwapQuote& quote);

// --- B2F external lending market ----------------------------------------------

struct LendingMarketState {
  Decimal credit_line;
  Decimal borrowed;
  rates::PiecewiseRateParams rate_params;
  Decimal reserve_factor;

  Decimal utilization() const {
    return credit_line.is_positive() ? borrowed / credit_line : Decimal::zero();
  }

  bool operator==(const LendingMarketState&) const = default;
};

struct LendingResult {
  LendingMarketState market;
  SupplyLedger ledger;
  Decimal interest_accrued;
  Decimal protocol_share;
};

/// Mints an unbacked credit line into the market's custody.
LendingResult lending_open(const SupplyLedger& l, const Decimal& credit_line,
                           const rates::PiecewiseRateParams& params,
                           const Decimal& reserve_factor);

/// Moves `borrow_delta` (negative repays) and accrues simple interest for
/// `dt_years` at the post-move utilization. Throws
/// Error(kExceedsCreditLine) if borrowing would pass the credit line.
LendingResult lending_step(const LendingMarketState& market, const SupplyLedger& l,
                           const Decimal& borrow_delta, const Decimal& dt_years);

// --- B2S perpetuals counterparty vault ------------------------------------

struct PerpsVaultState {
  Decimal credit_line;
  Decimal vault_assets;
  /// Trader profits the vault could not pay.
  Decimal open_liability;
  /// Part of vault_assets counted in the ledger's custodied_unbacked.
  Decimal custodied;

  Decimal collateralization() const {
    return credit_line.is_positive() ? vault_assets / credit_line : Decimal::one();
  }
  Decimal undercollateralization() const {
    return max(Decimal::one() - collateralization(), Decimal::zero());
  }

  bool operator==(const PerpsVaultState&) const = default;
};

struct PerpsResult {
  PerpsVaultState vault;
  SupplyLedger ledger;
  Decimal paid;       // to winning traders
  Decimal received;   // from losing traders
  Decimal shortfall;  // unpaid part of this step's profit
};

PerpsResult perps_open(const SupplyLedger& l, const Decimal& credit_line);

/// Settles one period of trader P&L against the vault. Positive `trader_pnl`
/// is paid out of the vault (never below zero); negative flows in.
PerpsResult perps_step(const PerpsVaultState& vault, const SupplyLedger& l,
                       const Decimal& trader_pnl);

struct BackfillResult {
  SupplyLedger ledger;
  Decimal used;
  Decimal unused;
};

/// A counterasset fund backs up to `fund` of circulating_unbacked supply.
BackfillResult backfill(const PerpsVaultState& vault, const SupplyLedger& l,
                        const Decimal& fund);

}  // namespace stablecredit::ledger
