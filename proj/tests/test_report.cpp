#include <doctest.h>

#include <filesystem>

#include <json.hpp>

#include "stablecredit/error.hpp"
#include "stablecredit/report.hpp"

using namespace stablecredit;
using namespace stablecredit::literals;

namespace {

scenario::ScenarioConfig load(const char* file) {
  return scenario::load_scenario(std::filesystem::path(STABLECREDIT_SOURCE_DIR) / "scenarios" /
                                 file);
}

}  // namespace

TEST_CASE("simulation report survives a JSON round trip") {
  auto c = load("worked_example.json");
  c.horizon = 40;
  auto r = sim::run_simulation(c, 42);
  r.monte_carlo = sim::monte_carlo(c, 20, 42, 2);
  auto text = report::to_json(r);
  auto back = report::simulation_from_json(text);
  CHECK(back == r);
  CHECK(report::to_json(back) == text);

  auto j = nlohmann::json::parse(text);
  CHECK(j["seed"] == 42);
  CHECK(j["scenario_hash"] == scenario::scenario_hash(c));
  CHECK(j["snapshots"].size() == 41);
  CHECK(j["final_ledger"]["total_minted"].is_string());
}

TEST_CASE("Monte Carlo summary round trip") {
  auto s = sim::monte_carlo(load("perps_bernoulli.json"), 50, 3, 1);
  CHECK(report::mc_summary_from_json(report::to_json(s)) == s);
  CHECK(nlohmann::json::parse(report::to_json(s))["generator"] == "philox4x64-10");
}

TEST_CASE("event log is one object per line") {
  auto r = sim::run_simulation(load("cdp_crash.json"), 0);
  auto text = report::events_to_jsonl(r.events);
  std::size_t lines = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    REQUIRE(end != std::string::npos);
    auto j = nlohmann::json::parse(text.substr(start, end - start));
    CHECK(j.contains("step"));
    CHECK(j.contains("type"));
    start = end + 1;
    ++lines;
  }
  CHECK(lines == r.events.size());
}

TEST_CASE("swap quote carries exact and rounded output") {
  auto q = amm::swap(amm::PoolState{1000000_dec, 1000000_dec, 100}, 400000_dec,
                     amm::Direction::kStableIn);
  auto j = nlohmann::json::parse(report::to_json(q));
  CHECK(j["direction"] == "stable-in");
  CHECK(j["amount_out"] == q.amount_out.to_string());
  CHECK(j["amount_out_rounded"] == q.amount_out.to_string_fixed(0));
}

TEST_CASE("malformed report text") {
  try {
    report::simulation_from_json("{\"seed\": 1}");
    FAIL("parsed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
  }
}
