#include "stablecredit/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "stablecredit/cdp.hpp"
#include "stablecredit/error.hpp"
#include "stablecredit/rng.hpp"

namespace stablecredit::sim {

namespace {

using scenario::Action;
using scenario::ScenarioConfig;

struct BookEntry {
  cdp::Position position;
  Decimal base_collateral;
  bool open = true;
};

struct MarketRuntime {
  std::string name;
  ledger::LendingMarketState state;
  const scenario::ExternalMarketConfig* config = nullptr;
  Decimal x;
  bool in_breach = false;
};

class Engine {
 public:
  Engine(const ScenarioConfig& cfg, const analysis::UnderwritingReport& uw, std::uint64_t seed,
         std::uint64_t path, bool record)
      : cfg_(cfg),
        record_(record),
        dt_(cfg.dt),
        price_rng_(seed, path, rng::Channel::kPrice),
        demand_rng_(seed, path, rng::Channel::kDemand),
        pnl_rng_(seed, path, rng::Channel::kPnl) {
    auto amo = ledger::amo_deploy(ledger_, cfg.pool.stable, cfg.pool.counter,
                                  cfg.pool.amplification);
    amo_ = amo.amo;
    ledger_ = amo.ledger;
    if (cfg.psm) {
      auto r = ledger::psm_deploy(ledger_, cfg.psm->stable_reserve, cfg.psm->counter_reserve);
      psm_ = r.psm;
      ledger_ = r.ledger;
    }
    for (std::size_t i = 0; i < cfg.external_markets.size(); ++i) {
      const auto& mc = cfg.external_markets[i];
      const auto& mu = uw.markets.at(i);
      auto r = ledger::lending_open(ledger_, mu.credit_line, mc.rate, mc.reserve_factor);
      ledger_ = r.ledger;
      markets_.push_back({mc.name, r.market, &mc, mu.x, false});
    }
    if (cfg.perps) {
      auto r = ledger::perps_open(ledger_, uw.perps->credit_line);
      vault_ = r.vault;
      ledger_ = r.ledger;
      if (cfg.perps->pnl) {
        pnl_ = *cfg.perps->pnl;
      } else {
        pnl_.kind = scenario::PnlModel::Kind::kGaussian;
        pnl_.mu = Decimal::zero();
        pnl_.sigma = vault_->credit_line *
                     Decimal::from_double(default_pnl_sigma_fraction(cfg.horizon));
      }
    }
    if (cfg.cdp_book) {
      for (const auto& p : cfg.cdp_book->positions) {
        cdp::validate(p);
        book_.push_back({p, p.collateral_value, true});
        if (p.debt.is_positive()) ledger_ = ledger::record_backed_mint(ledger_, p.debt);
      }
    }
    ledger::check_conservation(ledger_);
    if (record_) snapshot(0);
  }

  void run() {
    for (std::uint64_t t = 1; t <= cfg_.horizon; ++t) {
      for (const auto& a : cfg_.actions) {
        if (a.step == t) apply_action(t, a);
      }
      step_cdp(t);
      step_lending(t);
      step_perps(t);
      ledger::check_conservation(ledger_);
      outcome_.peak_circulating_unbacked =
          max(outcome_.peak_circulating_unbacked, ledger_.circulating_unbacked);
      if (record_) snapshot(t);
    }
  }

  const PathOutcome& outcome() const { return outcome_; }
  const Accruals& accruals() const { return accruals_; }
  const ledger::SupplyLedger& ledger_state() const { return ledger_; }
  std::vector<LedgerSnapshot> take_snapshots() { return std::move(snapshots_); }
  std::vector<Event> take_events() { return std::move(events_); }

 private:
  void emit(std::uint64_t step, std::string facilitator, std::string type,
            std::map<std::string, Decimal> amounts, std::string detail = {}) {
    if (!record_) return;
    events_.push_back(
        {step, std::move(facilitator), std::move(type), std::move(amounts), std::move(detail)});
  }

  void snapshot(std::uint64_t t) {
    LedgerSnapshot s;
    s.step = t;
    s.ledger = ledger_;
    s.price_multiplier = multiplier_;
    for (const auto& m : markets_) s.lending_borrowed += m.state.borrowed;
    if (vault_) {
      s.vault_assets = vault_->vault_assets;
      s.undercollateralization = vault_->undercollateralization();
    }
    snapshots_.push_back(std::move(s));
  }

  void apply_action(std::uint64_t t, const Action& a) {
    const std::string name(scenario::action_type_name(a.type));
    try {
      switch (a.type) {
        case Action::Type::kBackfill: {
          auto r = ledger::backfill(vault_.value_or(ledger::PerpsVaultState{}), ledger_, a.amount);
          ledger_ = r.ledger;
          emit(t, "fund", "backfill", {{"fund", a.amount}, {"used", r.used}, {"unused", r.unused}});
          break;
        }
        case Action::Type::kPsmSwapIn: {
          auto r = ledger::psm_swap_in(*psm_, ledger_, a.amount);
          psm_ = r.psm;
          ledger_ = r.ledger;
          emit(t, "psm", "swap_in", {{"counter_in", a.amount}, {"stable_out", r.amount_out}});
          break;
        }
        case Action::Type::kPsmRedeem: {
          auto r = ledger::psm_redeem(*psm_, ledger_, a.amount);
          psm_ = r.psm;
          ledger_ = r.ledger;
          emit(t, "psm", "redeem", {{"stable_in", a.amount}, {"counter_out", r.amount_out}});
          break;
        }
        case Action::Type::kAmoStableIn:
        case Action::Type::kAmoCounterIn: {
          auto dir = a.type == Action::Type::kAmoStableIn ? amm::Direction::kStableIn
                                                          : amm::Direction::kCounterIn;
          auto quote = amm::swap(amo_.pool, a.amount, dir);
          auto r = ledger::amo_pool_trade(amo_, ledger_, quote);
          amo_ = r.amo;
          ledger_ = r.ledger;
          emit(t, "amo", dir == amm::Direction::kStableIn ? "stable_in" : "counter_in",
               {{"amount_in", quote.amount_in},
                {"amount_out", quote.amount_out},
                {"spot_price", quote.post_spot_price},
                {"fraction_stable", quote.post_fraction_stable}});
          break;
        }
      }
    } catch (const Error& e) {
      emit(t, "script", "action_failed", {{"amount", a.amount}},
           name + ": " + std::string(error_code_name(e.code())) + ": " + e.what());
    }
  }

  void step_cdp(std::uint64_t t) {
    if (!cfg_.cdp_book) return;
    const auto& book = *cfg_.cdp_book;
    const auto& pp = book.price_path;
    switch (pp.kind) {
      case scenario::PricePath::Kind::kConstant:
        break;
      case scenario::PricePath::Kind::kSequence:
        multiplier_ = pp.values[std::min<std::size_t>(t - 1, pp.values.size() - 1)];
        break;
      case scenario::PricePath::Kind::kGbm: {
        const double dt = dt_.to_double();
        const double mu = pp.mu.to_double();
        const double sigma = pp.sigma.to_double();
        log_price_ += (mu - 0.5 * sigma * sigma) * dt +
                      sigma * std::sqrt(dt) * price_rng_.gaussian(0.0, 1.0);
        multiplier_ = Decimal::from_double(std::exp(log_price_));
        break;
      }
    }
    for (auto& b : book_) {
      if (!b.open) continue;
      auto& p = b.position;
      p.collateral_value = b.base_collateral * multiplier_;
      if (p.debt.is_zero()) continue;
      if (book.interest_rate.is_positive()) {
        Decimal accrued = p.debt * book.interest_rate * dt_;
        p.debt += accrued;
        ledger_ = ledger::record_backed_mint(ledger_, accrued);
        accruals_.cdp_interest += accrued;
      }
      if (!cdp::health_factor(p).below_one()) continue;
      auto out = cdp::liquidate(p, book.liquidation_bonus);
      ledger_ = ledger::record_backed_burn(ledger_, out.debt_repaid);
      if (out.bad_debt.is_positive()) ledger_ = ledger::record_bad_debt(ledger_, out.bad_debt);
      outcome_.total_bad_debt += out.bad_debt;
      ++outcome_.liquidations;
      emit(t, "cdp", "liquidation",
           {{"debt_repaid", out.debt_repaid},
            {"collateral_seized", out.collateral_seized},
            {"liquidator_profit", out.liquidator_profit},
            {"bad_debt", out.bad_debt}},
           p.owner);
      p.collateral_value -= out.collateral_seized;
      b.base_collateral = Decimal::zero();
      p.debt = Decimal::zero();
      b.open = false;
    }
  }

  Decimal target_utilization(const MarketRuntime& m, std::uint64_t t) {
    if (!m.config->demand) return m.config->rate.u_optimal;
    const auto& d = *m.config->demand;
    switch (d.kind) {
      case scenario::DemandModel::Kind::kConstant:
        return d.utilization;
      case scenario::DemandModel::Kind::kSequence:
        return d.values[std::min<std::size_t>(t - 1, d.values.size() - 1)];
      case scenario::DemandModel::Kind::kUniform:
        return d.min + (d.max - d.min) * Decimal::from_double(demand_rng_.uniform());
    }
    return m.config->rate.u_optimal;
  }

  void step_lending(std::uint64_t t) {
    Decimal total_borrowed;
    for (auto& m : markets_) {
      Decimal u = target_utilization(m, t);
      Decimal delta = m.state.credit_line * u - m.state.borrowed;
      auto r = ledger::lending_step(m.state, ledger_, delta, dt_);
      m.state = r.market;
      ledger_ = r.ledger;
      accruals_.credit_interest += r.interest_accrued;
      accruals_.protocol_share += r.protocol_share;
      accruals_.supplier_interest += r.interest_accrued - r.protocol_share;
      total_borrowed += m.state.borrowed;
      if (!delta.is_zero()) {
        emit(t, "lending:" + m.name, delta.is_positive() ? "borrow" : "repay",
             {{"delta", delta}, {"borrowed", m.state.borrowed}, {"utilization", u}});
      }
      const Decimal cur_u = m.state.utilization();
      const Decimal e = m.x * cur_u;
      bool breach = true;
      Decimal ext = rates::piecewise_rate_closed(cur_u, m.state.rate_params);
      Decimal fac;
      if (e < Decimal::one()) {
        fac = rates::controller_rate(e, cfg_.controller);
        breach = ext < fac;
      }
      if (breach != m.in_breach) {
        emit(t, "lending:" + m.name, breach ? "margin_breach" : "margin_restored",
             {{"utilization", cur_u}, {"external_rate", ext}, {"facilitator_rate", fac}});
        m.in_breach = breach;
      }
    }
    if (!markets_.empty()) {
      const Decimal supply = cfg_.lend.supply.value_or(cfg_.pool.stable);
      const Decimal e = total_borrowed / cfg_.pool.counter;
      if (cfg_.lend.rate) {
        accruals_.lend_interest += supply * *cfg_.lend.rate * dt_;
      } else if (e < Decimal::one()) {
        accruals_.lend_interest += supply * rates::controller_rate(e, cfg_.controller) * dt_;
      }
    }
  }

  void step_perps(std::uint64_t t) {
    if (!vault_) return;
    Decimal pnl;
    switch (pnl_.kind) {
      case scenario::PnlModel::Kind::kSequence:
        if (t - 1 < pnl_.values.size()) pnl = pnl_.values[t - 1];
        break;
      case scenario::PnlModel::Kind::kBernoulli:
        pnl = pnl_rng_.bernoulli(pnl_.win_probability.to_double()) ? pnl_.win_size
                                                                    : -pnl_.loss_size;
        break;
      case scenario::PnlModel::Kind::kGaussian:
        pnl = pnl_.mu + pnl_.sigma * Decimal::from_double(pnl_rng_.gaussian(0.0, 1.0));
        break;
    }
    auto r = ledger::perps_step(*vault_, ledger_, pnl);
    vault_ = r.vault;
    ledger_ = r.ledger;
    accruals_.trader_paid += r.paid;
    accruals_.trader_received += r.received;
    outcome_.total_shortfall += r.shortfall;
    outcome_.peak_undercollateralization =
        max(outcome_.peak_undercollateralization, vault_->undercollateralization());
    if (!pnl.is_zero()) {
      std::map<std::string, Decimal> amounts{{"pnl", pnl},
                                             {"vault_assets", vault_->vault_assets}};
      if (pnl.is_positive()) {
        amounts["paid"] = r.paid;
        amounts["shortfall"] = r.shortfall;
      } else {
        amounts["received"] = r.received;
      }
      emit(t, "perps", pnl.is_positive() ? "trader_win" : "trader_loss", std::move(amounts));
    }
  }

  const ScenarioConfig& cfg_;
  bool record_;
  Decimal dt_;
  rng::Stream price_rng_;
  rng::Stream demand_rng_;
  rng::Stream pnl_rng_;
  ledger::SupplyLedger ledger_;
  ledger::LiquidityAmoState amo_;
  std::optional<ledger::PsmState> psm_;
  std::vector<MarketRuntime> markets_;
  std::optional<ledger::PerpsVaultState> vault_;
  scenario::PnlModel pnl_;
  std::vector<BookEntry> book_;
  Decimal multiplier_ = Decimal::one();
  double log_price_ = 0.0;
  PathOutcome outcome_;
  Accruals accruals_;
  std::vector<LedgerSnapshot> snapshots_;
  std::vector<Event> events_;
};

// nearest rank: the smallest value with at least q% of samples at or below it
const Decimal& nearest_rank(const std::vector<Decimal>& sorted, std::uint64_t percent) {
  std::uint64_t n = sorted.size();
  std::uint64_t k = (percent * n + 99) / 100;
  return sorted[static_cast<std::size_t>(std::max<std::uint64_t>(k, 1) - 1)];
}

}  // namespace

double default_pnl_sigma_fraction(std::uint64_t horizon) {
  // running maximum of a driftless walk: P(M_n > m) ~ 2 P(S_n > m), so the
  // 99th percentile sits near z_0.995 * sigma * sqrt(n)
  constexpr double kTarget = 0.06;
  constexpr double kZ995 = 2.5758293035489004;
  return kTarget / (kZ995 * std::sqrt(static_cast<double>(horizon)));
}

PathOutcome simulate_path(const ScenarioConfig& config, const analysis::UnderwritingReport& uw,
                          std::uint64_t seed, std::uint64_t path) {
  Engine e(config, uw, seed, path, false);
  e.run();
  return e.outcome();
}

SimulationReport run_simulation(const ScenarioConfig& config, std::uint64_t seed) {
  SimulationReport r;
  r.tool_version = STABLECREDIT_VERSION;
  r.scenario_name = config.name;
  r.scenario_hash = scenario::scenario_hash(config);
  r.seed = seed;
  r.steps = config.horizon;
  r.underwriting = analysis::underwrite(config);
  r.yield = analysis::yield(config, r.underwriting);
  r.risk_register = analysis::risk_matrix(&config);

  Engine e(config, r.underwriting, seed, 0, true);
  e.run();
  r.snapshots = e.take_snapshots();
  r.events = e.take_events();
  r.final_ledger = e.ledger_state();
  r.outcome = e.outcome();
  r.accruals = e.accruals();
  const Decimal years = Decimal::from_int(static_cast<std::int64_t>(config.horizon)) * config.dt;
  const Decimal tvl = config.pool.stable + config.pool.counter;
  r.realized_yield = (r.accruals.supplier_interest + r.accruals.lend_interest) / years / tvl;
  return r;
}

McStat summarize(std::vector<Decimal> values) {
  if (values.empty()) throw Error(ErrorCode::kRange, "no samples to summarize");
  std::sort(values.begin(), values.end());
  McStat s;
  Decimal sum;
  std::int64_t positive = 0;
  for (const auto& v : values) {
    sum += v;
    if (v.is_positive()) ++positive;
  }
  const auto n = Decimal::from_int(static_cast<std::int64_t>(values.size()));
  s.mean = sum / n;
  s.max = values.back();
  s.p50 = nearest_rank(values, 50);
  s.p90 = nearest_rank(values, 90);
  s.p95 = nearest_rank(values, 95);
  s.p99 = nearest_rank(values, 99);
  s.prob_positive = Decimal::from_int(positive) / n;
  return s;
}

McSummary monte_carlo(const ScenarioConfig& config, std::uint64_t paths, std::uint64_t seed,
                      unsigned threads) {
  if (paths < 1) throw Error(ErrorCode::kScenarioInvalid, "paths must be >= 1", "/paths");
  const auto uw = analysis::underwrite(config);
  std::vector<PathOutcome> outcomes(paths);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, paths));

  std::atomic<std::uint64_t> next{0};
  std::mutex err_mu;
  std::uint64_t err_index = paths;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      std::uint64_t i = next.fetch_add(1);
      if (i >= paths) return;
      try {
        outcomes[i] = simulate_path(config, uw, seed, i);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (err) std::rethrow_exception(err);

  McSummary s;
  s.paths = paths;
  s.seed = seed;
  s.generator = std::string(rng::kPhiloxId);
  std::vector<Decimal> under, circ, shortfall;
  under.reserve(paths);
  circ.reserve(paths);
  shortfall.reserve(paths);
  for (const auto& o : outcomes) {
    under.push_back(o.peak_undercollateralization);
    circ.push_back(o.peak_circulating_unbacked);
    shortfall.push_back(o.total_shortfall);
  }
  s.peak_undercollateralization = summarize(std::move(under));
  s.peak_circulating_unbacked = summarize(std::move(circ));
  s.total_shortfall = summarize(std::move(shortfall));
  return s;
}

}  // namespace stablecredit::sim
