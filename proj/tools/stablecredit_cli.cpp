// Command-line front end. All numbers come from the engine's JSON reports;
// the table format only lays them out.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stablecredit/stablecredit.h"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitEngine = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int exit_code;
  std::string message;
};

struct CString {
  char* p = nullptr;
  ~CString() { sc_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct ScenarioDeleter {
  void operator()(sc_scenario* s) const { sc_scenario_free(s); }
};
using ScenarioPtr = std::unique_ptr<sc_scenario, ScenarioDeleter>;

std::string describe(sc_status st) {
  std::string msg = std::string(sc_status_name(st)) + ": " + sc_last_error();
  std::string path = sc_last_error_path();
  if (!path.empty() && msg.find(path) == std::string::npos) msg += " (at " + path + ")";
  return msg;
}

void check_engine(sc_status st) {
  if (st == SC_OK) return;
  int code = (st == SC_ERR_PARSE || st == SC_ERR_INVALID_ARGUMENT) ? kExitUsage : kExitEngine;
  throw Failure{code, describe(st)};
}

ScenarioPtr load(const std::string& path) {
  sc_scenario* s = nullptr;
  sc_status st = sc_scenario_load(path.c_str(), &s);
  if (st != SC_OK) throw Failure{kExitUsage, "scenario '" + path + "': " + describe(st)};
  return ScenarioPtr(s);
}

// --- table rendering ------------------------------------------------------

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void print(std::ostream& os) const {
    std::vector<std::size_t> w(header.size(), 0);
    for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
      std::string out;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        std::string c = cells[i];
        if (i + 1 < cells.size()) c.resize(w[i], ' ');
        out += c;
        if (i + 1 < cells.size()) out += "  ";
      }
      os << out << '\n';
    };
    line(header);
    std::vector<std::string> rule;
    for (auto n : w) rule.emplace_back(n, '-');
    line(rule);
    for (const auto& r : rows) line(r);
  }
};

std::string s(const json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  return v.dump();
}

void kv(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t w = 0;
  for (const auto& [k, v] : rows) w = std::max(w, k.size());
  for (const auto& [k, v] : rows) os << "  " << k << std::string(w - k.size() + 2, ' ') << v << '\n';
}

void render_quote(std::ostream& os, const json& q) {
  os << "Swap quote (" << s(q["direction"]) << ")\n";
  kv(os, {{"amount in", s(q["amount_in"])},
          {"amount out", s(q["amount_out"])},
          {"amount out (whole tokens)", s(q["amount_out_rounded"])},
          {"execution price", s(q["execution_price"])},
          {"post spot price", s(q["post_spot_price"])},
          {"post fraction stable", s(q["post_fraction_stable"])},
          {"post stable reserve", s(q["post_state"]["stable_reserve"])},
          {"post counter reserve", s(q["post_state"]["counter_reserve"])}});
}

void render_underwrite(std::ostream& os, const json& r) {
  os << "Underwriting (counterassets " << s(r["counterassets"]) << ", controller gain "
     << s(r["gain"]) << ")\n\n";
  if (!r["markets"].empty()) {
    Table t{{"market", "rate@u_opt", "X closed form", "X safe", "X", "credit line", "auto",
             "satisfied", "binding u", "min margin", "first violation"},
            {}};
    for (const auto& m : r["markets"]) {
      const auto& v = m["verdict"];
      t.rows.push_back({s(m["name"]), s(m["rate_at_optimal"]), s(m["x_closed_form"]),
                        s(m["x_safe"]), s(m["x"]), s(m["credit_line"]), s(m["auto_sized"]),
                        s(v["satisfied"]), s(v["binding_utilization"]), s(v["min_margin"]),
                        s(v["first_violation"])});
    }
    t.print(os);
    for (const auto& m : r["markets"]) {
      os << "\nMargin curve: " << s(m["name"]) << "\n";
      Table c{{"u", "external rate", "facilitator rate", "margin"}, {}};
      for (const auto& p : m["verdict"]["margin_curve"]) {
        c.rows.push_back({s(p["utilization"]), s(p["external_rate"]), s(p["facilitator_rate"]),
                          s(p["margin"])});
      }
      c.print(os);
    }
  }
  if (!r["perps"].is_null()) {
    const auto& p = r["perps"];
    os << "\nPerps vault\n";
    kv(os, {{"target rate", s(p["target_rate"])},
            {"worst-case drawdown", s(p["worst_case_drawdown"])},
            {"absorbable liquidity", s(p["absorbable"])},
            {"sized credit line", s(p["b2s_size"])},
            {"credit line", s(p["credit_line"])},
            {"auto", s(p["auto_sized"])}});
  }
  os << "\nCaveats\n";
  for (const auto& c : r["caveats"]) os << "  - " << s(c) << '\n';
}

void render_yield(std::ostream& os, const json& y) {
  os << "Endogenous yield (annual)\n\n";
  Table t{{"market", "credit line", "u", "borrowed", "rate", "reserve factor", "interest",
           "protocol share", "to suppliers"},
          {}};
  for (const auto& m : y["markets"]) {
    t.rows.push_back({s(m["name"]), s(m["credit_line"]), s(m["utilization"]), s(m["borrowed"]),
                      s(m["external_rate"]), s(m["reserve_factor"]), s(m["credit_interest"]),
                      s(m["protocol_share"]), s(m["supplier_interest"])});
  }
  if (!t.rows.empty()) {
    t.print(os);
    os << '\n';
  }
  kv(os, {{"total borrowed", s(y["total_borrowed"])},
          {"controller E", s(y["controller_e"])},
          {"lend supply", s(y["lend_supply"])},
          {"lend rate", s(y["lend_rate"])},
          {"lend interest", s(y["lend_interest"])},
          {"credit interest to suppliers", s(y["supplier_interest"])},
          {"directed to pool", s(y["directed_to_pool"])},
          {"pool TVL", s(y["pool_tvl"])},
          {"yield", s(y["yield"])}});
}

void render_absorb(std::ostream& os, const json& a) {
  os << "Absorbable liquidity\n";
  kv(os, {{"target rate", s(a["target_rate"])},
          {"controller gain", s(a["gain"])},
          {"counterassets", s(a["counterassets"])},
          {"controller E", s(a["controller_e"])},
          {"absorbable", s(a["absorbable"])},
          {"worst-case drawdown", s(a["worst_case_drawdown"])},
          {"perps credit line", s(a["b2s_credit_size"])}});
}

std::string rating(const json& r) {
  return s(r["likelihood"]) + std::to_string(r["consequence"].get<int>());
}

void render_risk(std::ostream& os, const json& r) {
  os << "Risk register\n\n";
  Table t{{"risk", "unmitigated", "tier", "interim mitigations", "enduring mitigations",
           "mitigated", "tier"},
          {}};
  auto join = [](const json& a) {
    std::string out;
    for (const auto& e : a) out += (out.empty() ? "" : "; ") + e.get<std::string>();
    return out.empty() ? std::string("-") : out;
  };
  for (const auto& e : r["register_rows"]) {
    t.rows.push_back({s(e["name"]), rating(e["unmitigated"]), s(e["unmitigated_cell"]["tier"]),
                      join(e["interim_mitigations"]), join(e["enduring_mitigations"]),
                      rating(e["mitigated"]), s(e["mitigated_cell"]["tier"])});
  }
  t.print(os);
  os << "\nRisk matrix (likelihood x consequence)\n\n";
  Table g{{"", "1", "2", "3"}, {}};
  const auto& grid = r["grid"];
  const char* letters[] = {"A", "B", "C"};
  for (int l = 2; l >= 0; --l) {
    std::vector<std::string> row{letters[l]};
    for (int c = 0; c < 3; ++c) {
      const auto& cell = grid[static_cast<std::size_t>(l * 3 + c)];
      row.push_back(s(cell["code"]) + " " + s(cell["tier"]));
    }
    g.rows.push_back(std::move(row));
  }
  g.print(os);
}

void render_mc_stat_rows(Table& t, const std::string& name, const json& m) {
  t.rows.push_back({name, s(m["mean"]), s(m["p50"]), s(m["p90"]), s(m["p95"]), s(m["p99"]),
                    s(m["max"]), s(m["prob_positive"])});
}

void render_mc(std::ostream& os, const json& m) {
  os << "Monte Carlo (" << s(m["paths"]) << " paths, seed " << s(m["seed"]) << ", "
     << s(m["generator"]) << ")\n\n";
  Table t{{"metric", "mean", "p50", "p90", "p95", "p99", "max", "P(>0)"}, {}};
  render_mc_stat_rows(t, "peak undercollateralization", m["peak_undercollateralization"]);
  render_mc_stat_rows(t, "peak circulating unbacked", m["peak_circulating_unbacked"]);
  render_mc_stat_rows(t, "trader shortfall", m["total_shortfall"]);
  t.print(os);
}

void render_simulation(std::ostream& os, const json& r) {
  os << "Simulation '" << s(r["scenario_name"]) << "' (version " << s(r["tool_version"])
     << ", scenario " << s(r["scenario_hash"]) << ", seed " << s(r["seed"]) << ", "
     << s(r["steps"]) << " steps)\n\n";
  const auto& l = r["final_ledger"];
  os << "Final ledger\n";
  kv(os, {{"total minted", s(l["total_minted"])},
          {"backed circulating", s(l["backed_circulating"])},
          {"custodied unbacked", s(l["custodied_unbacked"])},
          {"circulating unbacked", s(l["circulating_unbacked"])},
          {"externally collateralized", s(l["externally_collateralized"])},
          {"redistributed bad debt", s(l["redistributed_bad_debt"])}});
  const auto& o = r["outcome"];
  os << "\nPath outcome\n";
  kv(os, {{"peak circulating unbacked", s(o["peak_circulating_unbacked"])},
          {"peak undercollateralization", s(o["peak_undercollateralization"])},
          {"trader shortfall", s(o["total_shortfall"])},
          {"CDP bad debt", s(o["total_bad_debt"])},
          {"liquidations", s(o["liquidations"])}});
  const auto& a = r["accruals"];
  os << "\nAccruals over the horizon\n";
  kv(os, {{"credit interest", s(a["credit_interest"])},
          {"protocol share", s(a["protocol_share"])},
          {"to suppliers", s(a["supplier_interest"])},
          {"lend interest", s(a["lend_interest"])},
          {"CDP interest", s(a["cdp_interest"])},
          {"paid to traders", s(a["trader_paid"])},
          {"received from traders", s(a["trader_received"])},
          {"realized yield (annualized)", s(r["realized_yield"])},
          {"events", std::to_string(r["events"].size())}});
  os << "\nLedger snapshots (every " << std::max<std::size_t>(1, r["snapshots"].size() / 10)
     << " steps)\n";
  Table t{{"step", "backed", "custodied unbacked", "circulating unbacked", "vault assets"}, {}};
  const auto& snaps = r["snapshots"];
  std::size_t stride = std::max<std::size_t>(1, snaps.size() / 10);
  for (std::size_t i = 0; i < snaps.size(); i += stride) {
    const auto& sn = snaps[i];
    t.rows.push_back({s(sn["step"]), s(sn["ledger"]["backed_circulating"]),
                      s(sn["ledger"]["custodied_unbacked"]),
                      s(sn["ledger"]["circulating_unbacked"]), s(sn["vault_assets"])});
  }
  if (!snaps.empty() && (snaps.size() - 1) % stride != 0) {
    const auto& sn = snaps.back();
    t.rows.push_back({s(sn["step"]), s(sn["ledger"]["backed_circulating"]),
                      s(sn["ledger"]["custodied_unbacked"]),
                      s(sn["ledger"]["circulating_unbacked"]), s(sn["vault_assets"])});
  }
  t.print(os);
}

// --- output ---------------------------------------------------------------

struct Output {
  std::string format = "table";
  std::string out;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Failure{kExitEngine, "cannot write '" + path + "'"};
  f << text;
  if (!f) throw Failure{kExitEngine, "write to '" + path + "' failed"};
}

template <typename Render>
void emit(const Output& o, const std::string& report_json, Render render) {
  std::string text;
  if (o.format == "json") {
    text = report_json;
    if (text.empty() || text.back() != '\n') text += '\n';
  } else {
    std::ostringstream os;
    render(os, json::parse(report_json));
    text = os.str();
  }
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text(o.out, text);
  }
}

void add_output_flags(CLI::App* cmd, Output& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Write the report to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stablecoin credit issuance: simulation and underwriting"};
  app.set_version_flag("--version", std::string(sc_version()));
  app.require_subcommand(1);

  std::string scenario_path;
  Output output;
  std::string amount;
  std::string direction = "stable-in";
  std::optional<std::uint64_t> seed;
  std::uint64_t paths = 1000;
  unsigned threads = 0;
  std::string events_path;

  auto* quote = app.add_subcommand("swap-quote", "Quote a swap against the core pool");
  quote->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  quote->add_option("--amount", amount, "Amount in (decimal)")->required();
  quote->add_option("--direction", direction, "Input side")
      ->check(CLI::IsMember({"stable-in", "counter-in"}))
      ->capture_default_str();
  add_output_flags(quote, output);

  auto* uw = app.add_subcommand("underwrite", "Size credit lines and check the rate condition");
  uw->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  add_output_flags(uw, output);

  auto* yld = app.add_subcommand("yield", "Endogenous yield directed to the core pool");
  yld->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  add_output_flags(yld, output);

  auto* abs = app.add_subcommand("absorb", "Absorbable liquidity and perps credit sizing");
  abs->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  add_output_flags(abs, output);

  auto* simc = app.add_subcommand("simulate", "Run one deterministic simulation path");
  simc->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  simc->add_option("--seed", seed, "Master seed (default: the scenario's rng.seed)");
  simc->add_option("--events", events_path, "Write the line-delimited event log here");
  add_output_flags(simc, output);

  auto* mc = app.add_subcommand("monte-carlo", "Distribution of peak unbacked exposure");
  mc->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  mc->add_option("--seed", seed, "Master seed (default: the scenario's rng.seed)");
  mc->add_option("--paths", paths, "Number of paths")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}))
      ->capture_default_str();
  mc->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  add_output_flags(mc, output);

  auto* rm = app.add_subcommand("risk-matrix", "Risk register and likelihood/consequence grid");
  rm->add_option("--scenario", scenario_path, "Scenario whose risks extend the register");
  add_output_flags(rm, output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    CString report;
    if (*quote) {
      auto sc = load(scenario_path);
      check_engine(sc_swap_quote(sc.get(), amount.c_str(),
                                 direction == "stable-in" ? SC_STABLE_IN : SC_COUNTER_IN,
                                 &report.p));
      emit(output, report.str(), render_quote);
    } else if (*uw) {
      auto sc = load(scenario_path);
      check_engine(sc_underwrite(sc.get(), &report.p));
      emit(output, report.str(), render_underwrite);
    } else if (*yld) {
      auto sc = load(scenario_path);
      check_engine(sc_yield(sc.get(), &report.p));
      emit(output, report.str(), render_yield);
    } else if (*abs) {
      auto sc = load(scenario_path);
      check_engine(sc_absorb(sc.get(), &report.p));
      emit(output, report.str(), render_absorb);
    } else if (*simc) {
      auto sc = load(scenario_path);
      std::uint64_t sd = 0;
      check_engine(sc_scenario_seed(sc.get(), &sd));
      CString events;
      check_engine(sc_simulate(sc.get(), seed.value_or(sd), &report.p,
                               events_path.empty() ? nullptr : &events.p));
      if (!events_path.empty()) write_text(events_path, events.str());
      emit(output, report.str(), render_simulation);
    } else if (*mc) {
      auto sc = load(scenario_path);
      std::uint64_t sd = 0;
      check_engine(sc_scenario_seed(sc.get(), &sd));
      check_engine(sc_monte_carlo(sc.get(), paths, seed.value_or(sd), threads, &report.p));
      emit(output, report.str(), render_mc);
    } else if (*rm) {
      ScenarioPtr sc;
      if (!scenario_path.empty()) sc = load(scenario_path);
      check_engine(sc_risk_matrix(sc.get(), &report.p));
      emit(output, report.str(), render_risk);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEngine;
  }
  return kExitOk;
}
