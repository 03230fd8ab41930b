#include "stablecredit/stablecredit.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "stablecredit/analysis.hpp"
#include "stablecredit/cdp.hpp"
#include "stablecredit/error.hpp"
#include "stablecredit/report.hpp"
#include "stablecredit/risk_model.hpp"
#include "stablecredit/scenario.hpp"
#include "stablecredit/simulation.hpp"
#include "stablecredit/stableswap.hpp"
#include "stablecredit/underwriting.hpp"

namespace sc = stablecredit;

struct sc_scenario {
  sc::scenario::ScenarioConfig config;
};

struct sc_pool {
  sc::amm::PoolState state;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_error_path;

struct InvalidArgument {
  std::string message;
};

sc_status to_status(sc::ErrorCode code) {
  return static_cast<sc_status>(static_cast<int>(code) + 1);
}

void set_error(std::string message, std::string path = {}) {
  g_error = std::move(message);
  g_error_path = std::move(path);
}

template <typename F>
sc_status guarded(F&& body) {
  try {
    set_error({});
    body();
    return SC_OK;
  } catch (const sc::Error& e) {
    set_error(e.what(), e.path());
    return to_status(e.code());
  } catch (const InvalidArgument& e) {
    set_error(e.message);
    return SC_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return SC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SC_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return SC_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <typename T>
void need(T* p, const char* what) {
  if (!p) throw InvalidArgument{std::string(what) + " must not be NULL"};
}

sc::Decimal dec(const char* text, const char* what) {
  need(text, what);
  return sc::Decimal::parse(text);
}

sc::amm::Direction direction(sc_direction d) {
  switch (d) {
    case SC_STABLE_IN: return sc::amm::Direction::kStableIn;
    case SC_COUNTER_IN: return sc::amm::Direction::kCounterIn;
  }
  throw InvalidArgument{"unknown direction"};
}

void put(char** out, const std::string& s) {
  need(out, "output pointer");
  *out = dup(s);
}

}  // namespace

extern "C" {

const char* sc_version(void) { return STABLECREDIT_VERSION; }

const char* sc_status_name(sc_status status) {
  switch (status) {
    case SC_OK: return "OK";
    case SC_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case SC_ERR_INTERNAL: return "InternalError";
    default:
      break;
  }
  int code = static_cast<int>(status) - 1;
  if (code >= 0 && code <= static_cast<int>(sc::ErrorCode::kIo)) {
    return sc::error_code_name(static_cast<sc::ErrorCode>(code)).data();
  }
  return "UnknownStatus";
}

const char* sc_last_error(void) { return g_error.c_str(); }
const char* sc_last_error_path(void) { return g_error_path.c_str(); }
void sc_string_free(char* s) { std::free(s); }

sc_status sc_scenario_load(const char* path, sc_scenario** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "output pointer");
    *out = new sc_scenario{sc::scenario::load_scenario(path)};
  });
}

sc_status sc_scenario_parse(const char* json_text, sc_scenario** out) {
  return guarded([&] {
    need(json_text, "json_text");
    need(out, "output pointer");
    *out = new sc_scenario{sc::scenario::parse_scenario(json_text)};
  });
}

void sc_scenario_free(sc_scenario* scenario) { delete scenario; }

sc_status sc_scenario_emit(const sc_scenario* s, char** out) {
  return guarded([&] {
    need(s, "scenario");
    put(out, sc::scenario::emit_scenario(s->config));
  });
}

sc_status sc_scenario_hash(const sc_scenario* s, char** out) {
  return guarded([&] {
    need(s, "scenario");
    put(out, sc::scenario::scenario_hash(s->config));
  });
}

sc_status sc_scenario_seed(const sc_scenario* s, uint64_t* out) {
  return guarded([&] {
    need(s, "scenario");
    need(out, "output pointer");
    *out = s->config.rng.seed;
  });
}

sc_status sc_swap_quote(const sc_scenario* s, const char* amount, sc_direction d, char** out) {
  return guarded([&] {
    need(s, "scenario");
    auto q = sc::amm::swap(sc::analysis::core_pool(s->config), dec(amount, "amount"),
                           direction(d));
    put(out, sc::report::to_json(q));
  });
}

sc_status sc_underwrite(const sc_scenario* s, char** out) {
  return guarded([&] {
    need(s, "scenario");
    put(out, sc::report::to_json(sc::analysis::underwrite(s->config)));
  });
}

sc_status sc_yield(const sc_scenario* s, char** out) {
  return guarded([&] {
    need(s, "scenario");
    auto uw = sc::analysis::underwrite(s->config);
    put(out, sc::report::to_json(sc::analysis::yield(s->config, uw)));
  });
}

sc_status sc_absorb(const sc_scenario* s, char** out) {
  return guarded([&] {
    need(s, "scenario");
    put(out, sc::report::to_json(sc::analysis::absorb(s->config)));
  });
}

sc_status sc_simulate(const sc_scenario* s, uint64_t seed, char** out_report, char** out_events) {
  return guarded([&] {
    need(s, "scenario");
    need(out_report, "output pointer");
    auto r = sc::sim::run_simulation(s->config, seed);
    std::string report = sc::report::to_json(r);
    std::string events = out_events ? sc::report::events_to_jsonl(r.events) : std::string();
    char* rep = dup(report);
    if (out_events) {
      try {
        *out_events = dup(events);
      } catch (...) {
        std::free(rep);
        throw;
      }
    }
    *out_report = rep;
  });
}

sc_status sc_monte_carlo(const sc_scenario* s, uint64_t paths, uint64_t seed, unsigned threads,
                         char** out) {
  return guarded([&] {
    need(s, "scenario");
    put(out, sc::report::to_json(sc::sim::monte_carlo(s->config, paths, seed, threads)));
  });
}

sc_status sc_risk_matrix(const sc_scenario* s, char** out) {
  return guarded([&] {
    put(out, sc::report::to_json(sc::analysis::risk_matrix(s ? &s->config : nullptr)));
  });
}

sc_status sc_pool_create(const char* stable, const char* counter, uint64_t amplification,
                         sc_pool** out) {
  return guarded([&] {
    need(out, "output pointer");
    sc::amm::PoolState st{dec(stable, "stable_reserve"), dec(counter, "counter_reserve"),
                          amplification};
    sc::amm::validate(st);
    *out = new sc_pool{st};
  });
}

void sc_pool_free(sc_pool* pool) { delete pool; }

sc_status sc_pool_invariant(const sc_pool* p, char** out) {
  return guarded([&] {
    need(p, "pool");
    put(out, sc::amm::compute_invariant(p->state).to_string());
  });
}

sc_status sc_pool_spot_price(const sc_pool* p, char** out) {
  return guarded([&] {
    need(p, "pool");
    put(out, sc::amm::spot_price(p->state).to_string());
  });
}

sc_status sc_pool_fraction_stable(const sc_pool* p, char** out) {
  return guarded([&] {
    need(p, "pool");
    put(out, sc::amm::fraction_stable(p->state).to_string());
  });
}

sc_status sc_pool_reserves(const sc_pool* p, char** out_stable, char** out_counter) {
  return guarded([&] {
    need(p, "pool");
    need(out_stable, "output pointer");
    need(out_counter, "output pointer");
    char* a = dup(p->state.stable_reserve.to_string());
    try {
      *out_counter = dup(p->state.counter_reserve.to_string());
    } catch (...) {
      std::free(a);
      throw;
    }
    *out_stable = a;
  });
}

sc_status sc_pool_swap(sc_pool* p, const char* amount_in, sc_direction d, char** out) {
  return guarded([&] {
    need(p, "pool");
    auto q = sc::amm::swap(p->state, dec(amount_in, "amount_in"), direction(d));
    put(out, q.amount_out.to_string());
    p->state = q.post_state;
  });
}

sc_status sc_controller_rate(const char* e, const char* gain, char** out) {
  return guarded([&] {
    sc::rates::ControllerParams c{dec(gain, "gain")};
    sc::rates::validate(c);
    put(out, sc::rates::controller_rate(dec(e, "e"), c).to_string());
  });
}

sc_status sc_piecewise_rate(const char* u, const char* u_optimal, const char* slope1,
                            const char* slope2, const char* base_rate, char** out) {
  return guarded([&] {
    sc::rates::PiecewiseRateParams p{dec(u_optimal, "u_optimal"), dec(slope1, "slope1"),
                                     dec(slope2, "slope2"), dec(base_rate, "base_rate")};
    sc::rates::validate(p);
    put(out, sc::rates::piecewise_rate(dec(u, "u"), p).to_string());
  });
}

sc_status sc_max_credit_fraction(const char* rate, const char* u_optimal, const char* gain,
                                 char** out) {
  return guarded([&] {
    sc::rates::ControllerParams c{dec(gain, "gain")};
    put(out, sc::underwriting::max_credit_fraction(dec(rate, "rate_at_optimal"),
                                                   dec(u_optimal, "u_optimal"), c)
                 .to_string());
  });
}

sc_status sc_absorbable_liquidity(const char* target_rate, const char* gain,
                                  const char* counterassets, char** out) {
  return guarded([&] {
    sc::rates::ControllerParams c{dec(gain, "gain")};
    put(out, sc::underwriting::absorbable_liquidity(dec(target_rate, "target_rate"), c,
                                                    dec(counterassets, "counterassets"))
                 .to_string());
  });
}

sc_status sc_b2s_credit_size(const char* absorbable, const char* drawdown, char** out) {
  return guarded([&] {
    put(out, sc::underwriting::b2s_credit_size(dec(absorbable, "absorbable"),
                                               dec(drawdown, "worst_case_drawdown"))
                 .to_string());
  });
}

sc_status sc_endogenous_yield(const char* credit_borrowed, const char* external_rate,
                              const char* reserve_factor, const char* lend_supply,
                              const char* lend_rate, const char* pool_tvl, char** out) {
  return guarded([&] {
    put(out, sc::underwriting::endogenous_yield(
                 dec(credit_borrowed, "credit_borrowed"), dec(external_rate, "external_rate"),
                 dec(reserve_factor, "reserve_factor"), dec(lend_supply, "lend_supply"),
                 dec(lend_rate, "lend_rate"), dec(pool_tvl, "pool_tvl"))
                 .to_string());
  });
}

sc_status sc_health_factor(const char* collateral_value, const char* liquidation_threshold,
                           const char* debt, char** out) {
  return guarded([&] {
    sc::cdp::Position p{"", dec(collateral_value, "collateral_value"),
                        dec(liquidation_threshold, "liquidation_threshold"), dec(debt, "debt")};
    auto hf = sc::cdp::health_factor(p);
    put(out, hf.is_unleveraged() ? std::string("unleveraged") : hf.value().to_string());
  });
}

sc_status sc_risk_score(char likelihood, int consequence, char** out_code, char** out_tier) {
  return guarded([&] {
    need(out_code, "output pointer");
    need(out_tier, "output pointer");
    auto cell = sc::risk::score(sc::risk::parse_likelihood(std::string(1, likelihood)),
                                sc::risk::parse_consequence(std::to_string(consequence)));
    char* code = dup(cell.code);
    try {
      *out_tier = dup(std::string(sc::risk::tier_name(cell.tier)));
    } catch (...) {
      std::free(code);
      throw;
    }
    *out_code = code;
  });
}

}  // extern "C"
