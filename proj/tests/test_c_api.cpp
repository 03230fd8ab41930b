#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "stablecredit/stablecredit.h"

namespace {

const std::string kScenarios = std::string(STABLECREDIT_SOURCE_DIR) + "/scenarios/";

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  sc_string_free(s);
  return out;
}

struct Scenario {
  sc_scenario* p = nullptr;
  explicit Scenario(const std::string& file) {
    REQUIRE(sc_scenario_load((kScenarios + file).c_str(), &p) == SC_OK);
  }
  ~Scenario() { sc_scenario_free(p); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(sc_version()) > 0);
  CHECK(std::string(sc_status_name(SC_OK)) == "OK");
  CHECK(std::string(sc_status_name(SC_ERR_RANGE)) == "RangeError");
  CHECK(std::string(sc_status_name(SC_ERR_INVALID_ARGUMENT)) == "InvalidArgument");
  CHECK(std::string(sc_status_name(static_cast<sc_status>(99))) == "UnknownStatus");
}

TEST_CASE("scenario errors carry a status and a field path") {
  sc_scenario* s = nullptr;
  const char* bad =
      R"({"pool": {"stable": "1", "counter": "1", "amplification": 1},
          "external_markets": [{"rate": {"u_optimal": "1.2", "slope1": "0.1"}}]})";
  CHECK(sc_scenario_parse(bad, &s) == SC_ERR_RANGE);
  CHECK(s == nullptr);
  CHECK(std::string(sc_last_error_path()) == "/external_markets/0/rate/u_optimal");
  CHECK(std::string(sc_last_error()).find("u_optimal") != std::string::npos);

  CHECK(sc_scenario_parse("{", &s) == SC_ERR_PARSE);
  CHECK(sc_scenario_parse(R"({"controller": {}})", &s) == SC_ERR_SCHEMA);
  CHECK(sc_scenario_load("/nonexistent/x.json", &s) == SC_ERR_IO);
  CHECK(sc_scenario_parse(nullptr, &s) == SC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("scenario emit, hash and seed") {
  Scenario s("worked_example.json");
  std::string text = take([&] {
    char* out = nullptr;
    REQUIRE(sc_scenario_emit(s.p, &out) == SC_OK);
    return out;
  }());
  sc_scenario* again = nullptr;
  REQUIRE(sc_scenario_parse(text.c_str(), &again) == SC_OK);
  char* h1 = nullptr;
  char* h2 = nullptr;
  REQUIRE(sc_scenario_hash(s.p, &h1) == SC_OK);
  REQUIRE(sc_scenario_hash(again, &h2) == SC_OK);
  CHECK(take(h1) == take(h2));
  sc_scenario_free(again);
  uint64_t seed = 0;
  CHECK(sc_scenario_seed(s.p, &seed) == SC_OK);
  CHECK(seed == 42);
}

TEST_CASE("reports are JSON documents") {
  Scenario s("worked_example.json");
  char* out = nullptr;
  REQUIRE(sc_swap_quote(s.p, "400000", SC_STABLE_IN, &out) == SC_OK);
  auto q = nlohmann::json::parse(take(out));
  CHECK(q["amount_out_rounded"] == "398132");

  REQUIRE(sc_underwrite(s.p, &out) == SC_OK);
  CHECK(nlohmann::json::parse(take(out))["markets"].size() == 1);
  REQUIRE(sc_yield(s.p, &out) == SC_OK);
  CHECK(nlohmann::json::parse(take(out))["yield"] == "0.066");
  REQUIRE(sc_absorb(s.p, &out) == SC_OK);
  CHECK(nlohmann::json::parse(take(out))["absorbable"] == "400000");
  REQUIRE(sc_risk_matrix(nullptr, &out) == SC_OK);
  CHECK(nlohmann::json::parse(take(out))["grid"].size() == 9);

  Scenario small("perps_bernoulli.json");
  char* events = nullptr;
  REQUIRE(sc_simulate(small.p, 7, &out, &events) == SC_OK);
  CHECK(nlohmann::json::parse(take(out))["steps"] == 20);
  take(events);
  REQUIRE(sc_simulate(small.p, 7, &out, nullptr) == SC_OK);
  take(out);
  REQUIRE(sc_monte_carlo(small.p, 64, 7, 2, &out) == SC_OK);
  CHECK(nlohmann::json::parse(take(out))["paths"] == 64);
}

TEST_CASE("pool handle") {
  sc_pool* pool = nullptr;
  REQUIRE(sc_pool_create("1000000", "1000000", 100, &pool) == SC_OK);
  char* out = nullptr;
  REQUIRE(sc_pool_invariant(pool, &out) == SC_OK);
  CHECK(take(out) == "2000000");
  REQUIRE(sc_pool_spot_price(pool, &out) == SC_OK);
  CHECK(take(out) == "1");
  REQUIRE(sc_pool_swap(pool, "400000", SC_STABLE_IN, &out) == SC_OK);
  CHECK(take(out).rfind("398132.", 0) == 0);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(sc_pool_reserves(pool, &a, &b) == SC_OK);
  CHECK(take(a) == "1400000");
  CHECK(take(b).rfind("601867.", 0) == 0);
  REQUIRE(sc_pool_fraction_stable(pool, &out) == SC_OK);
  take(out);
  CHECK(sc_pool_swap(pool, "-1", SC_STABLE_IN, &out) == SC_ERR_OUT_OF_RANGE);
  CHECK(sc_pool_swap(pool, "1", static_cast<sc_direction>(5), &out) == SC_ERR_INVALID_ARGUMENT);
  sc_pool_free(pool);
  CHECK(sc_pool_create("0", "1", 1, &pool) == SC_ERR_INVALID_POOL);
}

TEST_CASE("scalar helpers") {
  char* out = nullptr;
  REQUIRE(sc_controller_rate("0.4", "0.15", &out) == SC_OK);
  CHECK(take(out) == "0.1");
  REQUIRE(sc_piecewise_rate("0.8", "0.8", "0.1", "0.75", "0", &out) == SC_OK);
  CHECK(take(out) == "0.1");
  REQUIRE(sc_max_credit_fraction("0.1", "0.8", "0.15", &out) == SC_OK);
  CHECK(take(out) == "0.5");
  REQUIRE(sc_absorbable_liquidity("0.1", "0.15", "1000000", &out) == SC_OK);
  CHECK(take(out) == "400000");
  REQUIRE(sc_b2s_credit_size("400000", "0.06", &out) == SC_OK);
  CHECK(take(out).rfind("6666666.", 0) == 0);
  REQUIRE(sc_endogenous_yield("400000", "0.1", "0.2", "1000000", "0.1", "2000000", &out) == SC_OK);
  CHECK(take(out) == "0.066");
  REQUIRE(sc_health_factor("10000", "0.8", "0", &out) == SC_OK);
  CHECK(take(out) == "unleveraged");
  REQUIRE(sc_health_factor("10000", "0.8", "4000", &out) == SC_OK);
  CHECK(take(out) == "2");
  char* code = nullptr;
  char* tier = nullptr;
  REQUIRE(sc_risk_score('A', 3, &code, &tier) == SC_OK);
  CHECK(take(code) == "A3");
  take(tier);
  CHECK(sc_risk_score('Z', 3, &code, &tier) != SC_OK);
  CHECK(sc_controller_rate("abc", "0.15", &out) != SC_OK);
  CHECK(sc_controller_rate("0.4", nullptr, &out) == SC_ERR_INVALID_ARGUMENT);
}
