#ifndef STABLECREDIT_H
#define STABLECREDIT_H

/* C interface to the stablecredit engine.
 *
 * Every function returns an sc_status. On failure the message and, for
 * scenario errors, the JSON pointer of the offending field are available
 * from sc_last_error() / sc_last_error_path() on the calling thread until
 * the next call.
 *
 * Decimal values cross the boundary as strings ("400000", "0.995"). Output
 * strings are heap-allocated and must be released with sc_string_free().
 */

#include <stdint.h>

#if defined(_WIN32)
#define SC_API __declspec(dllexport)
#else
#define SC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_ERR_PARSE = 1,
  SC_ERR_SCHEMA = 2,
  SC_ERR_RANGE = 3,
  SC_ERR_INVALID_POOL = 4,
  SC_ERR_NON_CONVERGENCE = 5,
  SC_ERR_DRAINED_POOL = 6,
  SC_ERR_OUT_OF_RANGE = 7,
  SC_ERR_DIVERGENCE = 8,
  SC_ERR_EXCEEDS_LTV = 9,
  SC_ERR_NOT_LIQUIDATABLE = 10,
  SC_ERR_INSUFFICIENT_RESERVE = 11,
  SC_ERR_STALE_QUOTE = 12,
  SC_ERR_EXCEEDS_CREDIT_LINE = 13,
  SC_ERR_INVALID_ENTRY = 14,
  SC_ERR_SCENARIO_INVALID = 15,
  SC_ERR_ARITHMETIC = 16,
  SC_ERR_IO = 17,
  SC_ERR_INVALID_ARGUMENT = 18,
  SC_ERR_INTERNAL = 19
} sc_status;

typedef enum sc_direction { SC_STABLE_IN = 0, SC_COUNTER_IN = 1 } sc_direction;

typedef struct sc_scenario sc_scenario;
typedef struct sc_pool sc_pool;

SC_API const char* sc_version(void);
SC_API const char* sc_status_name(sc_status status);
SC_API const char* sc_last_error(void);
SC_API const char* sc_last_error_path(void);
SC_API void sc_string_free(char* s);

/* Scenarios */
SC_API sc_status sc_scenario_load(const char* path, sc_scenario** out);
SC_API sc_status sc_scenario_parse(const char* json_text, sc_scenario** out);
SC_API void sc_scenario_free(sc_scenario* scenario);
SC_API sc_status sc_scenario_emit(const sc_scenario* scenario, char** out_json);
SC_API sc_status sc_scenario_hash(const sc_scenario* scenario, char** out_hex);
SC_API sc_status sc_scenario_seed(const sc_scenario* scenario, uint64_t* out_seed);

/* Reports (JSON documents) */
SC_API sc_status sc_swap_quote(const sc_scenario* scenario, const char* amount,
                               sc_direction direction, char** out_json);
SC_API sc_status sc_underwrite(const sc_scenario* scenario, char** out_json);
SC_API sc_status sc_yield(const sc_scenario* scenario, char** out_json);
SC_API sc_status sc_absorb(const sc_scenario* scenario, char** out_json);
/* out_events receives line-delimited JSON; pass NULL to skip it. */
SC_API sc_status sc_simulate(const sc_scenario* scenario, uint64_t seed, char** out_report,
                             char** out_events);
/* threads = 0 uses every hardware thread. */
SC_API sc_status sc_monte_carlo(const sc_scenario* scenario, uint64_t paths, uint64_t seed,
                                unsigned threads, char** out_json);
/* scenario may be NULL for the built-in register only. */
SC_API sc_status sc_risk_matrix(const sc_scenario* scenario, char** out_json);

/* StableSwap pool */
SC_API sc_status sc_pool_create(const char* stable_reserve, const char* counter_reserve,
                                uint64_t amplification, sc_pool** out);
SC_API void sc_pool_free(sc_pool* pool);
SC_API sc_status sc_pool_invariant(const sc_pool* pool, char** out);
SC_API sc_status sc_pool_spot_price(const sc_pool* pool, char** out);
SC_API sc_status sc_pool_fraction_stable(const sc_pool* pool, char** out);
SC_API sc_status sc_pool_reserves(const sc_pool* pool, char** out_stable, char** out_counter);
/* Executes the swap against the pool and writes the amount received. */
SC_API sc_status sc_pool_swap(sc_pool* pool, const char* amount_in, sc_direction direction,
                              char** out_amount);

/* Rates and underwriting */
SC_API sc_status sc_controller_rate(const char* e, const char* gain, char** out);
SC_API sc_status sc_piecewise_rate(const char* u, const char* u_optimal, const char* slope1,
                                   const char* slope2, const char* base_rate, char** out);
SC_API sc_status sc_max_credit_fraction(const char* rate_at_optimal, const char* u_optimal,
                                        const char* gain, char** out);
SC_API sc_status sc_absorbable_liquidity(const char* target_rate, const char* gain,
                                         const char* counterassets, char** out);
SC_API sc_status sc_b2s_credit_size(const char* absorbable, const char* worst_case_drawdown,
                                    char** out);
SC_API sc_status sc_endogenous_yield(const char* credit_borrowed, const char* external_rate,
                                     const char* reserve_factor, const char* lend_supply,
                                     const char* lend_rate, const char* pool_tvl, char** out);

/* CDP. Writes "unleveraged" for a debt-free position. */
SC_API sc_status sc_health_factor(const char* collateral_value,
                                  const char* liquidation_threshold, const char* debt, char** out);

/* Risk cell for likelihood 'A'..'C' and consequence 1..3. */
SC_API sc_status sc_risk_score(char likelihood, int consequence, char** out_code,
                               char** out_tier);

#ifdef __cplusplus
}
#endif

#endif /* STABLECREDIT_H */
