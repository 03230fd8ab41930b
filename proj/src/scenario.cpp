#include "stablecredit/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stablecredit/error.hpp"
#include "stablecredit/rng.hpp"
#include "stablecredit/stableswap.hpp"

namespace stablecredit::scenario {

namespace {

using json = nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kSchema, path + ": " + msg, path);
}

[[noreturn]] void range_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kRange, path + ": " + msg, path);
}

std::string child(const std::string& path, std::string_view key) {
  return path + "/" + std::string(key);
}
std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path.empty() ? "/" : path, "expected an object");
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  expect_object(j, path);
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!ok.count(it.key())) schema_error(child(path, it.key()), "unknown field");
  }
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const json& require(const json& j, const char* key, const std::string& path) {
  const json* v = find(j, key);
  if (!v) schema_error(child(path, key), "required field missing");
  return *v;
}

Decimal as_decimal(const json& v, const std::string& path) {
  try {
    if (v.is_string()) return Decimal::parse(v.get<std::string>());
    if (v.is_number_unsigned()) {
      return Decimal::parse(std::to_string(v.get<std::uint64_t>()));
    }
    if (v.is_number_integer()) return Decimal::from_int(v.get<std::int64_t>());
    if (v.is_number_float()) return Decimal::from_double(v.get<double>());
  } catch (const Error& e) {
    schema_error(path, e.what());
  }
  schema_error(path, "expected a decimal string or number");
}

std::uint64_t as_uint(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    auto i = v.get<std::int64_t>();
    if (i < 0) range_error(path, "must be non-negative");
    return static_cast<std::uint64_t>(i);
  }
  schema_error(path, "expected a non-negative integer");
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) schema_error(path, "expected a string");
  return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array");
  return v;
}

Decimal opt_decimal(const json& j, const char* key, const std::string& path, Decimal fallback) {
  const json* v = find(j, key);
  return v ? as_decimal(*v, child(path, key)) : fallback;
}

std::vector<Decimal> decimal_list(const json& v, const std::string& path) {
  std::vector<Decimal> out;
  std::size_t i = 0;
  for (const auto& e : as_array(v, path)) out.push_back(as_decimal(e, child(path, i++)));
  return out;
}

void check_ratio(const Decimal& d, const std::string& path, bool open_low, bool open_high) {
  bool low_ok = open_low ? d.is_positive() : !d.is_negative();
  bool high_ok = open_high ? d < Decimal::one() : d <= Decimal::one();
  if (!low_ok || !high_ok) {
    range_error(path, d.to_string() + " outside " + std::string(open_low ? "(0" : "[0") + ", 1" +
                          (open_high ? ")" : "]"));
  }
}

void check_non_negative(const Decimal& d, const std::string& path) {
  if (d.is_negative()) range_error(path, "must be non-negative");
}

void check_positive(const Decimal& d, const std::string& path) {
  if (!d.is_positive()) range_error(path, "must be positive");
}

// credit_line: "auto" or an amount
std::optional<Decimal> parse_credit_line(const json& j, const std::string& path) {
  const json* v = find(j, "credit_line");
  if (!v) return std::nullopt;
  if (v->is_string() && v->get<std::string>() == "auto") return std::nullopt;
  Decimal d = as_decimal(*v, child(path, "credit_line"));
  check_non_negative(d, child(path, "credit_line"));
  return d;
}

rates::PiecewiseRateParams parse_rate(const json& j, const std::string& path) {
  check_keys(j, path, {"u_optimal", "slope1", "slope2", "base_rate", "ray"});
  bool ray = false;
  if (const json* r = find(j, "ray")) {
    if (!r->is_boolean()) schema_error(child(path, "ray"), "expected a boolean");
    ray = r->get<bool>();
  }
  auto field = [&](const char* key, bool required) {
    Decimal d = required ? as_decimal(require(j, key, path), child(path, key))
                         : opt_decimal(j, key, path, Decimal::zero());
    return ray ? d / rates::ray() : d;
  };
  rates::PiecewiseRateParams p;
  p.u_optimal = field("u_optimal", true);
  p.slope1 = field("slope1", true);
  p.slope2 = field("slope2", false);
  p.base_rate = field("base_rate", false);
  check_ratio(p.u_optimal, child(path, "u_optimal"), true, true);
  check_non_negative(p.slope1, child(path, "slope1"));
  check_non_negative(p.slope2, child(path, "slope2"));
  check_non_negative(p.base_rate, child(path, "base_rate"));
  return p;
}

DemandModel parse_demand(const json& j, const std::string& path) {
  expect_object(j, path);
  std::string model = as_string(require(j, "model", path), child(path, "model"));
  DemandModel d;
  if (model == "constant") {
    check_keys(j, path, {"model", "utilization"});
    d.kind = DemandModel::Kind::kConstant;
    d.utilization = as_decimal(require(j, "utilization", path), child(path, "utilization"));
    check_ratio(d.utilization, child(path, "utilization"), false, false);
  } else if (model == "sequence") {
    check_keys(j, path, {"model", "values"});
    d.kind = DemandModel::Kind::kSequence;
    d.values = decimal_list(require(j, "values", path), child(path, "values"));
    if (d.values.empty()) range_error(child(path, "values"), "must not be empty");
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      check_ratio(d.values[i], child(child(path, "values"), i), false, false);
    }
  } else if (model == "uniform") {
    check_keys(j, path, {"model", "min", "max"});
    d.kind = DemandModel::Kind::kUniform;
    d.min = as_decimal(require(j, "min", path), child(path, "min"));
    d.max = as_decimal(require(j, "max", path), child(path, "max"));
    check_ratio(d.min, child(path, "min"), false, false);
    check_ratio(d.max, child(path, "max"), false, false);
    if (d.max < d.min) range_error(child(path, "max"), "must be >= min");
  } else {
    schema_error(child(path, "model"), "unknown demand model '" + model + "'");
  }
  return d;
}

PnlModel parse_pnl(const json& j, const std::string& path) {
  expect_object(j, path);
  std::string model = as_string(require(j, "model", path), child(path, "model"));
  PnlModel m;
  if (model == "sequence") {
    check_keys(j, path, {"model", "values"});
    m.kind = PnlModel::Kind::kSequence;
    m.values = decimal_list(require(j, "values", path), child(path, "values"));
  } else if (model == "bernoulli") {
    check_keys(j, path, {"model", "win_probability", "win_size", "loss_size"});
    m.kind = PnlModel::Kind::kBernoulli;
    m.win_probability =
        as_decimal(require(j, "win_probability", path), child(path, "win_probability"));
    m.win_size = as_decimal(require(j, "win_size", path), child(path, "win_size"));
    m.loss_size = as_decimal(require(j, "loss_size", path), child(path, "loss_size"));
    check_ratio(m.win_probability, child(path, "win_probability"), false, false);
    check_non_negative(m.win_size, child(path, "win_size"));
    check_non_negative(m.loss_size, child(path, "loss_size"));
  } else if (model == "gaussian") {
    check_keys(j, path, {"model", "mu", "sigma"});
    m.kind = PnlModel::Kind::kGaussian;
    m.mu = as_decimal(require(j, "mu", path), child(path, "mu"));
    m.sigma = as_decimal(require(j, "sigma", path), child(path, "sigma"));
    check_non_negative(m.sigma, child(path, "sigma"));
  } else {
    schema_error(child(path, "model"), "unknown pnl model '" + model + "'");
  }
  return m;
}

PricePath parse_price_path(const json& j, const std::string& path) {
  expect_object(j, path);
  std::string model = as_string(require(j, "model", path), child(path, "model"));
  PricePath p;
  if (model == "constant") {
    check_keys(j, path, {"model"});
    p.kind = PricePath::Kind::kConstant;
  } else if (model == "sequence") {
    check_keys(j, path, {"model", "values"});
    p.kind = PricePath::Kind::kSequence;
    p.values = decimal_list(require(j, "values", path), child(path, "values"));
    if (p.values.empty()) range_error(child(path, "values"), "must not be empty");
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      check_positive(p.values[i], child(child(path, "values"), i));
    }
  } else if (model == "gbm") {
    check_keys(j, path, {"model", "mu", "sigma"});
    p.kind = PricePath::Kind::kGbm;
    p.mu = as_decimal(require(j, "mu", path), child(path, "mu"));
    p.sigma = as_decimal(require(j, "sigma", path), child(path, "sigma"));
    check_non_negative(p.sigma, child(path, "sigma"));
  } else {
    schema_error(child(path, "model"), "unknown price path model '" + model + "'");
  }
  return p;
}

risk::Rating parse_rating(const json& j, const std::string& path) {
  check_keys(j, path, {"likelihood", "consequence"});
  risk::Rating r;
  auto lpath = child(path, "likelihood");
  auto cpath = child(path, "consequence");
  const json& l = require(j, "likelihood", path);
  const json& c = require(j, "consequence", path);
  try {
    r.likelihood = risk::parse_likelihood(as_string(l, lpath));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSchema) throw;
    range_error(lpath, e.what());
  }
  try {
    std::string ctext = c.is_number_integer() ? std::to_string(c.get<std::int64_t>())
                                              : as_string(c, cpath);
    r.consequence = risk::parse_consequence(ctext);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSchema) throw;
    range_error(cpath, e.what());
  }
  return r;
}

std::vector<std::string> string_list(const json& j, const char* key, const std::string& path) {
  std::vector<std::string> out;
  const json* v = find(j, key);
  if (!v) return out;
  auto p = child(path, key);
  std::size_t i = 0;
  for (const auto& e : as_array(*v, p)) out.push_back(as_string(e, child(p, i++)));
  return out;
}

Action::Type parse_action_type(const std::string& s, const std::string& path) {
  for (auto t : {Action::Type::kBackfill, Action::Type::kPsmSwapIn, Action::Type::kPsmRedeem,
                 Action::Type::kAmoStableIn, Action::Type::kAmoCounterIn}) {
    if (s == action_type_name(t)) return t;
  }
  schema_error(path, "unknown action type '" + s + "'");
}

ScenarioConfig from_json(const json& root) {
  check_keys(root, "", {"name", "pool", "controller", "external_markets", "perps", "psm",
                        "cdp_book", "lend", "underwriting", "actions", "risks", "horizon", "dt",
                        "rng"});
  ScenarioConfig c;
  if (const json* n = find(root, "name")) c.name = as_string(*n, "/name");

  {
    const json& pool = require(root, "pool", "");
    const std::string p = "/pool";
    check_keys(pool, p, {"stable", "counter", "amplification"});
    c.pool.stable = as_decimal(require(pool, "stable", p), child(p, "stable"));
    c.pool.counter = as_decimal(require(pool, "counter", p), child(p, "counter"));
    c.pool.amplification = as_uint(require(pool, "amplification", p), child(p, "amplification"));
    check_positive(c.pool.stable, child(p, "stable"));
    check_positive(c.pool.counter, child(p, "counter"));
    if (c.pool.amplification < 1) range_error(child(p, "amplification"), "must be >= 1");
  }

  if (const json* ctl = find(root, "controller")) {
    check_keys(*ctl, "/controller", {"gain"});
    c.controller.gain = opt_decimal(*ctl, "gain", "/controller", c.controller.gain);
    check_positive(c.controller.gain, "/controller/gain");
  }

  if (const json* mk = find(root, "external_markets")) {
    std::size_t i = 0;
    for (const auto& m : as_array(*mk, "/external_markets")) {
      const std::string p = child("/external_markets", i);
      check_keys(m, p, {"name", "rate", "reserve_factor", "credit_line", "borrow_demand"});
      ExternalMarketConfig em;
      em.name = find(m, "name") ? as_string(m["name"], child(p, "name"))
                                : "market-" + std::to_string(i);
      em.rate = parse_rate(require(m, "rate", p), child(p, "rate"));
      em.reserve_factor = opt_decimal(m, "reserve_factor", p, Decimal::zero());
      check_ratio(em.reserve_factor, child(p, "reserve_factor"), false, false);
      em.credit_line = parse_credit_line(m, p);
      if (const json* d = find(m, "borrow_demand")) {
        em.demand = parse_demand(*d, child(p, "borrow_demand"));
      }
      c.external_markets.push_back(std::move(em));
      ++i;
    }
  }

  if (const json* pj = find(root, "perps")) {
    const std::string p = "/perps";
    check_keys(*pj, p, {"credit_line", "target_rate", "worst_case_drawdown", "pnl"});
    PerpsConfig pc;
    pc.credit_line = parse_credit_line(*pj, p);
    pc.target_rate = opt_decimal(*pj, "target_rate", p, pc.target_rate);
    pc.worst_case_drawdown = opt_decimal(*pj, "worst_case_drawdown", p, pc.worst_case_drawdown);
    check_non_negative(pc.target_rate, child(p, "target_rate"));
    check_ratio(pc.worst_case_drawdown, child(p, "worst_case_drawdown"), true, false);
    if (const json* pnl = find(*pj, "pnl")) pc.pnl = parse_pnl(*pnl, child(p, "pnl"));
    c.perps = std::move(pc);
  }

  if (const json* sj = find(root, "psm")) {
    const std::string p = "/psm";
    check_keys(*sj, p, {"stable_reserve", "counter_reserve"});
    PsmConfig ps;
    ps.stable_reserve = as_decimal(require(*sj, "stable_reserve", p), child(p, "stable_reserve"));
    ps.counter_reserve = opt_decimal(*sj, "counter_reserve", p, Decimal::zero());
    check_non_negative(ps.stable_reserve, child(p, "stable_reserve"));
    check_non_negative(ps.counter_reserve, child(p, "counter_reserve"));
    c.psm = ps;
  }

  if (const json* bj = find(root, "cdp_book")) {
    const std::string p = "/cdp_book";
    check_keys(*bj, p, {"ltv_cap", "liquidation_bonus", "interest_rate", "positions", "price_path"});
    CdpBookConfig book;
    book.ltv_cap = opt_decimal(*bj, "ltv_cap", p, book.ltv_cap);
    book.liquidation_bonus = opt_decimal(*bj, "liquidation_bonus", p, book.liquidation_bonus);
    book.interest_rate = opt_decimal(*bj, "interest_rate", p, Decimal::zero());
    check_ratio(book.ltv_cap, child(p, "ltv_cap"), true, false);
    check_non_negative(book.liquidation_bonus, child(p, "liquidation_bonus"));
    check_non_negative(book.interest_rate, child(p, "interest_rate"));
    if (const json* pos = find(*bj, "positions")) {
      std::size_t i = 0;
      const std::string pp = child(p, "positions");
      for (const auto& e : as_array(*pos, pp)) {
        const std::string ep = child(pp, i);
        check_keys(e, ep, {"owner", "collateral", "liquidation_threshold", "debt"});
        cdp::Position position;
        position.owner = find(e, "owner") ? as_string(e["owner"], child(ep, "owner"))
                                          : "position-" + std::to_string(i);
        position.collateral_value =
            as_decimal(require(e, "collateral", ep), child(ep, "collateral"));
        position.liquidation_threshold = as_decimal(require(e, "liquidation_threshold", ep),
                                                    child(ep, "liquidation_threshold"));
        position.debt = opt_decimal(e, "debt", ep, Decimal::zero());
        check_non_negative(position.collateral_value, child(ep, "collateral"));
        check_ratio(position.liquidation_threshold, child(ep, "liquidation_threshold"), true,
                    false);
        check_non_negative(position.debt, child(ep, "debt"));
        if (position.debt > position.collateral_value * book.ltv_cap) {
          range_error(child(ep, "debt"), "exceeds collateral * ltv_cap");
        }
        book.positions.push_back(std::move(position));
        ++i;
      }
    }
    if (const json* pp = find(*bj, "price_path")) {
      book.price_path = parse_price_path(*pp, child(p, "price_path"));
    }
    c.cdp_book = std::move(book);
  }

  if (const json* lj = find(root, "lend")) {
    check_keys(*lj, "/lend", {"supply", "rate"});
    if (const json* s = find(*lj, "supply")) {
      c.lend.supply = as_decimal(*s, "/lend/supply");
      check_non_negative(*c.lend.supply, "/lend/supply");
    }
    if (const json* r = find(*lj, "rate")) {
      c.lend.rate = as_decimal(*r, "/lend/rate");
      check_non_negative(*c.lend.rate, "/lend/rate");
    }
  }

  if (const json* uj = find(root, "underwriting")) {
    check_keys(*uj, "/underwriting", {"grid_points", "grid_max"});
    if (const json* g = find(*uj, "grid_points")) {
      c.underwriting.grid_points = as_uint(*g, "/underwriting/grid_points");
    }
    c.underwriting.grid_max = opt_decimal(*uj, "grid_max", "/underwriting", c.underwriting.grid_max);
    if (c.underwriting.grid_points < 2 || c.underwriting.grid_points > 100000) {
      range_error("/underwriting/grid_points", "must lie in [2, 100000]");
    }
    check_ratio(c.underwriting.grid_max, "/underwriting/grid_max", false, true);
  }

  if (const json* h = find(root, "horizon")) {
    c.horizon = as_uint(*h, "/horizon");
    if (c.horizon < 1 || c.horizon > 1000000) range_error("/horizon", "must lie in [1, 1000000]");
  }
  c.dt = opt_decimal(root, "dt", "", c.dt);
  check_positive(c.dt, "/dt");

  if (const json* aj = find(root, "actions")) {
    std::size_t i = 0;
    for (const auto& e : as_array(*aj, "/actions")) {
      const std::string p = child("/actions", i);
      check_keys(e, p, {"step", "type", "amount"});
      Action a;
      a.step = as_uint(require(e, "step", p), child(p, "step"));
      a.type = parse_action_type(as_string(require(e, "type", p), child(p, "type")),
                                 child(p, "type"));
      a.amount = as_decimal(require(e, "amount", p), child(p, "amount"));
      check_non_negative(a.amount, child(p, "amount"));
      if (a.step < 1 || a.step > c.horizon) range_error(child(p, "step"), "outside [1, horizon]");
      if ((a.type == Action::Type::kPsmSwapIn || a.type == Action::Type::kPsmRedeem) && !c.psm) {
        range_error(child(p, "type"), "PSM action without a psm block");
      }
      c.actions.push_back(a);
      ++i;
    }
  }

  if (const json* rj = find(root, "risks")) {
    std::size_t i = 0;
    for (const auto& e : as_array(*rj, "/risks")) {
      const std::string p = child("/risks", i);
      check_keys(e, p, {"name", "unmitigated", "interim_mitigations", "enduring_mitigations",
                        "mitigated"});
      risk::RiskRegisterEntry entry;
      entry.name = as_string(require(e, "name", p), child(p, "name"));
      entry.unmitigated = parse_rating(require(e, "unmitigated", p), child(p, "unmitigated"));
      entry.mitigated = parse_rating(require(e, "mitigated", p), child(p, "mitigated"));
      entry.interim_mitigations = string_list(e, "interim_mitigations", p);
      entry.enduring_mitigations = string_list(e, "enduring_mitigations", p);
      try {
        risk::validate(entry);
      } catch (const Error& err) {
        range_error(child(p, "mitigated"), err.what());
      }
      c.risks.push_back(std::move(entry));
      ++i;
    }
  }

  if (const json* rj = find(root, "rng")) {
    check_keys(*rj, "/rng", {"algorithm", "seed"});
    if (const json* a = find(*rj, "algorithm")) c.rng.algorithm = as_string(*a, "/rng/algorithm");
    if (c.rng.algorithm != rng::kPhiloxId) {
      range_error("/rng/algorithm", "unsupported generator '" + c.rng.algorithm + "'");
    }
    if (const json* s = find(*rj, "seed")) c.rng.seed = as_uint(*s, "/rng/seed");
  }
  return c;
}

json dec(const Decimal& d) { return d.to_string(); }

json dec_list(const std::vector<Decimal>& v) {
  json a = json::array();
  for (const auto& d : v) a.push_back(dec(d));
  return a;
}

json credit_json(const std::optional<Decimal>& c) { return c ? dec(*c) : json("auto"); }

json rating_json(const risk::Rating& r) {
  return {{"likelihood", std::string(1, risk::likelihood_letter(r.likelihood))},
          {"consequence", std::to_string(risk::consequence_digit(r.consequence))}};
}

json to_json(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  j["pool"] = {{"stable", dec(c.pool.stable)},
               {"counter", dec(c.pool.counter)},
               {"amplification", c.pool.amplification}};
  j["controller"] = {{"gain", dec(c.controller.gain)}};

  json markets = json::array();
  for (const auto& m : c.external_markets) {
    json mj;
    mj["name"] = m.name;
    mj["rate"] = {{"u_optimal", dec(m.rate.u_optimal)},
                  {"slope1", dec(m.rate.slope1)},
                  {"slope2", dec(m.rate.slope2)},
                  {"base_rate", dec(m.rate.base_rate)}};
    mj["reserve_factor"] = dec(m.reserve_factor);
    mj["credit_line"] = credit_json(m.credit_line);
    if (m.demand) {
      const auto& d = *m.demand;
      switch (d.kind) {
        case DemandModel::Kind::kConstant:
          mj["borrow_demand"] = {{"model", "constant"}, {"utilization", dec(d.utilization)}};
          break;
        case DemandModel::Kind::kSequence:
          mj["borrow_demand"] = {{"model", "sequence"}, {"values", dec_list(d.values)}};
          break;
        case DemandModel::Kind::kUniform:
          mj["borrow_demand"] = {{"model", "uniform"}, {"min", dec(d.min)}, {"max", dec(d.max)}};
          break;
      }
    }
    markets.push_back(std::move(mj));
  }
  j["external_markets"] = std::move(markets);

  if (c.perps) {
    const auto& p = *c.perps;
    json pj;
    pj["credit_line"] = credit_json(p.credit_line);
    pj["target_rate"] = dec(p.target_rate);
    pj["worst_case_drawdown"] = dec(p.worst_case_drawdown);
    if (p.pnl) {
      const auto& m = *p.pnl;
      switch (m.kind) {
        case PnlModel::Kind::kSequence:
          pj["pnl"] = {{"model", "sequence"}, {"values", dec_list(m.values)}};
          break;
        case PnlModel::Kind::kBernoulli:
          pj["pnl"] = {{"model", "bernoulli"},
                       {"win_probability", dec(m.win_probability)},
                       {"win_size", dec(m.win_size)},
                       {"loss_size", dec(m.loss_size)}};
          break;
        case PnlModel::Kind::kGaussian:
          pj["pnl"] = {{"model", "gaussian"}, {"mu", dec(m.mu)}, {"sigma", dec(m.sigma)}};
          break;
      }
    }
    j["perps"] = std::move(pj);
  }

  if (c.psm) {
    j["psm"] = {{"stable_reserve", dec(c.psm->stable_reserve)},
                {"counter_reserve", dec(c.psm->counter_reserve)}};
  }

  if (c.cdp_book) {
    const auto& b = *c.cdp_book;
    json bj;
    bj["ltv_cap"] = dec(b.ltv_cap);
    bj["liquidation_bonus"] = dec(b.liquidation_bonus);
    bj["interest_rate"] = dec(b.interest_rate);
    json positions = json::array();
    for (const auto& p : b.positions) {
      positions.push_back({{"owner", p.owner},
                           {"collateral", dec(p.collateral_value)},
                           {"liquidation_threshold", dec(p.liquidation_threshold)},
                           {"debt", dec(p.debt)}});
    }
    bj["positions"] = std::move(positions);
    switch (b.price_path.kind) {
      case PricePath::Kind::kConstant:
        bj["price_path"] = {{"model", "constant"}};
        break;
      case PricePath::Kind::kSequence:
        bj["price_path"] = {{"model", "sequence"}, {"values", dec_list(b.price_path.values)}};
        break;
      case PricePath::Kind::kGbm:
        bj["price_path"] = {
            {"model", "gbm"}, {"mu", dec(b.price_path.mu)}, {"sigma", dec(b.price_path.sigma)}};
        break;
    }
    j["cdp_book"] = std::move(bj);
  }

  json lend = json::object();
  if (c.lend.supply) lend["supply"] = dec(*c.lend.supply);
  if (c.lend.rate) lend["rate"] = dec(*c.lend.rate);
  j["lend"] = std::move(lend);

  j["underwriting"] = {{"grid_points", c.underwriting.grid_points},
                       {"grid_max", dec(c.underwriting.grid_max)}};

  json actions = json::array();
  for (const auto& a : c.actions) {
    actions.push_back({{"step", a.step},
                       {"type", std::string(action_type_name(a.type))},
                       {"amount", dec(a.amount)}});
  }
  j["actions"] = std::move(actions);

  json risks = json::array();
  for (const auto& r : c.risks) {
    risks.push_back({{"name", r.name},
                     {"unmitigated", rating_json(r.unmitigated)},
                     {"interim_mitigations", r.interim_mitigations},
                     {"enduring_mitigations", r.enduring_mitigations},
                     {"mitigated", rating_json(r.mitigated)}});
  }
  j["risks"] = std::move(risks);

  j["horizon"] = c.horizon;
  j["dt"] = dec(c.dt);
  j["rng"] = {{"algorithm", c.rng.algorithm}, {"seed", c.rng.seed}};
  return j;
}

}  // namespace

std::string_view action_type_name(Action::Type t) {
  switch (t) {
    case Action::Type::kBackfill: return "backfill";
    case Action::Type::kPsmSwapIn: return "psm_swap_in";
    case Action::Type::kPsmRedeem: return "psm_redeem";
    case Action::Type::kAmoStableIn: return "amo_stable_in";
    case Action::Type::kAmoCounterIn: return "amo_counter_in";
  }
  return "?";
}

ScenarioConfig parse_scenario(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed scenario JSON: ") + e.what());
  }
  return from_json(root);
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open scenario file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string emit_scenario(const ScenarioConfig& config) { return to_json(config).dump(2); }

std::string scenario_hash(const ScenarioConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : emit_scenario(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace stablecredit::scenario
