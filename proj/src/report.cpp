#include "stablecredit/report.hpp"

#include <json.hpp>

#include "stablecredit/error.hpp"

namespace nlohmann {

template <>
struct adl_serializer<stablecredit::Decimal> {
  static void to_json(json& j, const stablecredit::Decimal& d) { j = d.to_string(); }
  static void from_json(const json& j, stablecredit::Decimal& d) {
    d = stablecredit::Decimal::parse(j.get<std::string>());
  }
};

template <typename T>
struct adl_serializer<std::optional<T>> {
  static void to_json(json& j, const std::optional<T>& v) {
    if (v) {
      j = *v;
    } else {
      j = nullptr;
    }
  }
  static void from_json(const json& j, std::optional<T>& v) {
    if (j.is_null()) {
      v.reset();
    } else {
      v = j.get<T>();
    }
  }
};

}  // namespace nlohmann

namespace stablecredit {

namespace risk {

NLOHMANN_JSON_SERIALIZE_ENUM(Tier, {{Tier::kBlue, "Blue"},
                                    {Tier::kGreen, "Green"},
                                    {Tier::kYellow, "Yellow"},
                                    {Tier::kOrange, "Orange"},
                                    {Tier::kRed, "Red"}})

void to_json(nlohmann::json& j, const Rating& r) {
  j = {{"likelihood", std::string(1, likelihood_letter(r.likelihood))},
       {"consequence", consequence_digit(r.consequence)}};
}
void from_json(const nlohmann::json& j, Rating& r) {
  r.likelihood = parse_likelihood(j.at("likelihood").get<std::string>());
  r.consequence = parse_consequence(std::to_string(j.at("consequence").get<int>()));
}

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RiskCell, code, tier)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RiskRegisterEntry, name, unmitigated, interim_mitigations,
                                   enduring_mitigations, mitigated)

}  // namespace risk

namespace amm {

NLOHMANN_JSON_SERIALIZE_ENUM(Direction, {{Direction::kStableIn, "stable-in"},
                                         {Direction::kCounterIn, "counter-in"}})
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PoolState, stable_reserve, counter_reserve, amplification)

void to_json(nlohmann::json& j, const SwapQuote& q) {
  j = {{"direction", q.direction},
       {"amount_in", q.amount_in},
       {"amount_out", q.amount_out},
       {"amount_out_rounded", q.amount_out.to_string_fixed(0)},
       {"execution_price", q.execution_price},
       {"post_spot_price", q.post_spot_price},
       {"post_fraction_stable", q.post_fraction_stable},
       {"pre_state", q.pre_state},
       {"post_state", q.post_state}};
}

}  // namespace amm

namespace rates {
void to_json(nlohmann::json& j, const PiecewiseRateParams& p) {
  j = {{"u_optimal", p.u_optimal},
       {"slope1", p.slope1},
       {"slope2", p.slope2},
       {"base_rate", p.base_rate}};
}
void from_json(const nlohmann::json& j, PiecewiseRateParams& p) {
  j.at("u_optimal").get_to(p.u_optimal);
  j.at("slope1").get_to(p.slope1);
  j.at("slope2").get_to(p.slope2);
  j.at("base_rate").get_to(p.base_rate);
}
}  // namespace rates

namespace underwriting {
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(MarginPoint, utilization, external_rate, facilitator_rate,
                                   margin)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(UnderwritingVerdict, satisfied, binding_utilization,
                                   min_margin, first_violation, margin_curve)
}  // namespace underwriting

namespace ledger {
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SupplyLedger, backed_circulating, custodied_unbacked,
                                   circulating_unbacked, total_minted, externally_collateralized,
                                   redistributed_bad_debt)
}  // namespace ledger

namespace analysis {
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(MarketUnderwriting, name, rate, rate_at_optimal, x_closed_form,
                                   x_safe, x, credit_line, auto_sized, verdict)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PerpsUnderwriting, target_rate, worst_case_drawdown,
                                   absorbable, b2s_size, credit_line, auto_sized)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(UnderwritingReport, counterassets, gain, markets, perps,
                                   caveats)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(MarketYield, name, credit_line, utilization, borrowed,
                                   external_rate, reserve_factor, credit_interest, protocol_share,
                                   supplier_interest)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(YieldReport, markets, total_borrowed, controller_e,
                                   lend_supply, lend_rate, lend_interest, supplier_interest,
                                   directed_to_pool, pool_tvl, yield)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AbsorbReport, target_rate, gain, counterassets, controller_e,
                                   absorbable, worst_case_drawdown, b2s_credit_size)

void to_json(nlohmann::json& j, const RiskRow& r) {
  j = {{"name", r.entry.name},
       {"unmitigated", r.entry.unmitigated},
       {"unmitigated_cell", r.unmitigated},
       {"interim_mitigations", r.entry.interim_mitigations},
       {"enduring_mitigations", r.entry.enduring_mitigations},
       {"mitigated", r.entry.mitigated},
       {"mitigated_cell", r.mitigated}};
}
void from_json(const nlohmann::json& j, RiskRow& r) {
  j.at("name").get_to(r.entry.name);
  j.at("unmitigated").get_to(r.entry.unmitigated);
  j.at("unmitigated_cell").get_to(r.unmitigated);
  j.at("interim_mitigations").get_to(r.entry.interim_mitigations);
  j.at("enduring_mitigations").get_to(r.entry.enduring_mitigations);
  j.at("mitigated").get_to(r.entry.mitigated);
  j.at("mitigated_cell").get_to(r.mitigated);
}
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RiskMatrixReport, register_rows, grid)
}  // namespace analysis

namespace sim {
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LedgerSnapshot, step, ledger, price_multiplier,
                                   lending_borrowed, vault_assets, undercollateralization)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Event, step, facilitator, type, amounts, detail)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Accruals, credit_interest, protocol_share, supplier_interest,
                                   lend_interest, cdp_interest, trader_paid, trader_received)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PathOutcome, peak_circulating_unbacked,
                                   peak_undercollateralization, total_shortfall, total_bad_debt,
                                   liquidations)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(McStat, mean, max, p50, p90, p95, p99, prob_positive)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(McSummary, paths, seed, generator, peak_undercollateralization,
                                   peak_circulating_unbacked, total_shortfall)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SimulationReport, tool_version, scenario_name, scenario_hash,
                                   seed, steps, underwriting, yield, risk_register, snapshots,
                                   events, final_ledger, outcome, accruals, realized_yield,
                                   monte_carlo)
}  // namespace sim

namespace report {

namespace {

template <typename T>
std::string dump(const T& v) {
  nlohmann::json j = v;
  return j.dump(2);
}

template <typename T>
T load(std::string_view text, const char* what) {
  try {
    return nlohmann::json::parse(text.begin(), text.end()).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

std::string to_json(const amm::SwapQuote& q) { return dump(q); }
std::string to_json(const analysis::UnderwritingReport& r) { return dump(r); }
std::string to_json(const analysis::YieldReport& r) { return dump(r); }
std::string to_json(const analysis::AbsorbReport& r) { return dump(r); }
std::string to_json(const analysis::RiskMatrixReport& r) { return dump(r); }
std::string to_json(const sim::McSummary& s) { return dump(s); }
std::string to_json(const sim::SimulationReport& r) { return dump(r); }

std::string events_to_jsonl(const std::vector<sim::Event>& events) {
  std::string out;
  for (const auto& e : events) {
    nlohmann::json j = e;
    out += j.dump();
    out += '\n';
  }
  return out;
}

sim::SimulationReport simulation_from_json(std::string_view text) {
  return load<sim::SimulationReport>(text, "simulation report");
}

sim::McSummary mc_summary_from_json(std::string_view text) {
  return load<sim::McSummary>(text, "Monte Carlo summary");
}

}  // namespace report

}  // namespace stablecredit
