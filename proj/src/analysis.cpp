#include "stablecredit/analysis.hpp"

#include "stablecredit/error.hpp"

namespace stablecredit::analysis {

namespace {

Decimal initial_utilization(const scenario::ExternalMarketConfig& m) {
  if (!m.demand) return m.rate.u_optimal;
  const auto& d = *m.demand;
  switch (d.kind) {
    case scenario::DemandModel::Kind::kConstant: return d.utilization;
    case scenario::DemandModel::Kind::kSequence: return d.values.front();
    case scenario::DemandModel::Kind::kUniform: return (d.min + d.max) / Decimal::from_int(2);
  }
  return m.rate.u_optimal;
}

}  // namespace

amm::PoolState core_pool(const scenario::ScenarioConfig& config) {
  return {config.pool.stable, config.pool.counter, config.pool.amplification};
}

UnderwritingReport underwrite(const scenario::ScenarioConfig& config) {
  UnderwritingReport r;
  r.counterassets = config.pool.counter;
  r.gain = config.controller.gain;
  const auto grid = underwriting::uniform_grid(config.underwriting.grid_points,
                                               config.underwriting.grid_max);
  for (const auto& m : config.external_markets) {
    MarketUnderwriting mu;
    mu.name = m.name;
    mu.rate = m.rate;
    mu.rate_at_optimal = rates::piecewise_rate(m.rate.u_optimal, m.rate);
    mu.x_closed_form = underwriting::max_credit_fraction(mu.rate_at_optimal, m.rate.u_optimal,
                                                         config.controller);
    mu.x_safe = underwriting::safe_credit_fraction(m.rate, config.controller, grid);
    if (m.credit_line) {
      mu.auto_sized = false;
      mu.credit_line = *m.credit_line;
      mu.x = *m.credit_line / config.pool.counter;
    } else {
      mu.x = mu.x_safe;
      mu.credit_line = underwriting::credit_line_amount(mu.x, config.pool.counter);
    }
    const auto top = grid.back();
    if (mu.x * top >= Decimal::one()) {
      throw Error(ErrorCode::kDivergence, "market '" + m.name + "': credit fraction " +
                                              mu.x.to_string() + " saturates the controller");
    }
    mu.verdict = underwriting::check_condition(mu.x, m.rate, config.controller, grid);
    r.markets.push_back(std::move(mu));
  }
  if (config.perps) {
    PerpsUnderwriting p;
    p.target_rate = config.perps->target_rate;
    p.worst_case_drawdown = config.perps->worst_case_drawdown;
    p.absorbable = underwriting::absorbable_liquidity(p.target_rate, config.controller,
                                                      config.pool.counter);
    p.b2s_size = underwriting::b2s_credit_size(p.absorbable, p.worst_case_drawdown);
    if (config.perps->credit_line) {
      p.auto_sized = false;
      p.credit_line = *config.perps->credit_line;
    } else {
      p.credit_line = p.b2s_size;
    }
    r.perps = p;
  }
  r.caveats.push_back(
      "Credit lines are a snapshot of current rate curves and pool depth; revisit them as "
      "either changes.");
  if (!r.markets.empty()) {
    r.caveats.push_back(
        "Arbitrage AMO demand for the stablecoin is not modeled; it may support a larger line.");
  }
  return r;
}

YieldReport yield(const scenario::ScenarioConfig& config, const UnderwritingReport& uw) {
  YieldReport y;
  y.pool_tvl = config.pool.stable + config.pool.counter;
  for (std::size_t i = 0; i < config.external_markets.size(); ++i) {
    const auto& m = config.external_markets[i];
    MarketYield my;
    my.name = m.name;
    my.credit_line = uw.markets.at(i).credit_line;
    my.utilization = initial_utilization(m);
    my.borrowed = my.credit_line * my.utilization;
    my.external_rate = rates::piecewise_rate_closed(my.utilization, m.rate);
    my.reserve_factor = m.reserve_factor;
    auto b = underwriting::endogenous_yield_breakdown(my.borrowed, my.external_rate,
                                                      my.reserve_factor, Decimal::zero(),
                                                      Decimal::zero(), y.pool_tvl);
    my.credit_interest = b.credit_interest;
    my.protocol_share = b.protocol_share;
    my.supplier_interest = b.supplier_interest;
    y.total_borrowed += my.borrowed;
    y.supplier_interest += my.supplier_interest;
    y.markets.push_back(std::move(my));
  }
  y.controller_e = y.total_borrowed / config.pool.counter;
  y.lend_supply = config.lend.supply.value_or(config.pool.stable);
  y.lend_rate = config.lend.rate ? *config.lend.rate
                                 : rates::controller_rate(y.controller_e, config.controller);
  y.lend_interest = y.lend_supply * y.lend_rate;
  y.directed_to_pool = y.supplier_interest + y.lend_interest;
  y.yield = y.directed_to_pool / y.pool_tvl;
  return y;
}

AbsorbReport absorb(const scenario::ScenarioConfig& config) {
  AbsorbReport a;
  const scenario::PerpsConfig defaults;
  const auto& perps = config.perps ? *config.perps : defaults;
  a.target_rate = perps.target_rate;
  a.gain = config.controller.gain;
  a.counterassets = config.pool.counter;
  a.controller_e = a.target_rate / (a.gain + a.target_rate);
  a.absorbable = underwriting::absorbable_liquidity(a.target_rate, config.controller,
                                                    a.counterassets);
  a.worst_case_drawdown = perps.worst_case_drawdown;
  a.b2s_credit_size = underwriting::b2s_credit_size(a.absorbable, a.worst_case_drawdown);
  return a;
}

RiskMatrixReport risk_matrix(const scenario::ScenarioConfig* config) {
  RiskMatrixReport r;
  auto entries = risk::default_register();
  if (config) entries.insert(entries.end(), config->risks.begin(), config->risks.end());
  for (auto& e : entries) {
    auto [before, after] = risk::apply_mitigations(e);
    r.register_rows.push_back({std::move(e), before, after});
  }
  for (auto l : {risk::Likelihood::kLow, risk::Likelihood::kMedium, risk::Likelihood::kHigh}) {
    for (auto c :
         {risk::Consequence::kLow, risk::Consequence::kMedium, risk::Consequence::kHigh}) {
      r.grid.push_back(risk::score(l, c));
    }
  }
  return r;
}

}  // namespace stablecredit::analysis
