// Copyright 2026 The hopqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/* C interface to the hopqec library.
 *
 * Every function returns a hopqec_status. On failure the message of the most recent error on the
 * calling thread is available from hopqec_last_error() until the next failing call. Objects are
 * opaque handles created by *_create / *_load / computation functions and released with the
 * matching *_free function; passing NULL to a free function is a no-op. Output pointers are only
 * written on success.
 */
#ifndef HOPQEC_HOPQEC_H
#define HOPQEC_HOPQEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(HOPQEC_BUILDING_LIBRARY)
#define HOPQEC_API __attribute__((visibility("default")))
#else
#define HOPQEC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hopqec_status {
    HOPQEC_OK = 0,
    HOPQEC_ERR_INVALID_ARGUMENT = 1,
    HOPQEC_ERR_IO = 2,
    HOPQEC_ERR_NUMERICAL = 3,
    HOPQEC_ERR_DEGENERATE_TRANSMON = 4,
    HOPQEC_ERR_CALIBRATION = 5,
    HOPQEC_ERR_LABELING = 6,
    HOPQEC_ERR_CHANNEL_EXTRACTION = 7,
    HOPQEC_ERR_MATCHING = 8,
    HOPQEC_ERR_COMPILE = 9,
    HOPQEC_ERR_CIRCUIT = 10,
    HOPQEC_ERR_DECODE = 11,
    HOPQEC_ERR_THRESHOLD_UNDETERMINED = 12,
    HOPQEC_ERR_NO_FINITE_DISTANCE = 13,
    HOPQEC_ERR_INTERNAL = 100
} hopqec_status;

typedef enum hopqec_schedule { HOPQEC_SCHEDULE_STD = 0, HOPQEC_SCHEDULE_HOP = 1 } hopqec_schedule;

HOPQEC_API const char *hopqec_version(void);
HOPQEC_API const char *hopqec_last_error(void);
HOPQEC_API const char *hopqec_status_name(hopqec_status status);

/* ---- device couplings ---------------------------------------------------------------------- */

typedef struct hopqec_couplings hopqec_couplings;

/* Diagonalizes the lattice described by the JSON file at `params_path` (NULL selects the built-in
 * parameter set) within `excitation_cap` total excitations. With `strict` non-zero an ambiguous
 * dressed-state label fails with HOPQEC_ERR_LABELING; otherwise overlaps are only reported. */
HOPQEC_API hopqec_status hopqec_couplings_compute(const char *params_path, int excitation_cap, int strict,
                                                  hopqec_couplings **out);
HOPQEC_API void hopqec_couplings_free(hopqec_couplings *c);
HOPQEC_API size_t hopqec_couplings_count(const hopqec_couplings *c);
/* Pair `index` (check-data pairs first): qubit indices (0 = check qubit), zeta / 2pi in MHz and
 * the smallest label overlap of the four dressed states used. */
HOPQEC_API hopqec_status hopqec_couplings_pair(const hopqec_couplings *c, size_t index, int *j, int *k,
                                               double *zeta_mhz, double *min_overlap);
/* Writes the CSV `pair,zeta_over_2pi_MHz,label_overlap_min`. */
HOPQEC_API hopqec_status hopqec_couplings_write_csv(const hopqec_couplings *c, const char *path);

/* ---- gate channels ------------------------------------------------------------------------- */

typedef struct hopqec_channel hopqec_channel;

/* Twirled channel of the HOP gate on `arity` qubits (5 or 3) at strength p, with its matched
 * CZ-ladder strength lambda. */
HOPQEC_API hopqec_status hopqec_channel_extract(double p, int arity, hopqec_channel **out);
HOPQEC_API hopqec_status hopqec_channel_load(const char *path, hopqec_channel **out);
HOPQEC_API hopqec_status hopqec_channel_save(const hopqec_channel *ch, const char *path);
HOPQEC_API void hopqec_channel_free(hopqec_channel *ch);
HOPQEC_API int hopqec_channel_arity(const hopqec_channel *ch);
HOPQEC_API double hopqec_channel_p(const hopqec_channel *ch);
HOPQEC_API double hopqec_channel_fidelity(const hopqec_channel *ch);
/* Negative when the channel carries no lambda. */
HOPQEC_API double hopqec_channel_lambda(const hopqec_channel *ch);
/* Sum of all Pauli weights. */
HOPQEC_API double hopqec_channel_total(const hopqec_channel *ch);

/* Matched two-qubit depolarizing strength of the four-CZ parity check at strength p. */
HOPQEC_API hopqec_status hopqec_match_lambda(double p, double *lambda);

/* ---- channel compilation ------------------------------------------------------------------- */

typedef struct hopqec_compiled hopqec_compiled;

/* order 1 or 2. For order 2, `clamp_negative` non-zero zeroes negative shifted probabilities
 * (recording the removed mass) instead of failing with HOPQEC_ERR_COMPILE. */
HOPQEC_API hopqec_status hopqec_compile(const hopqec_channel *ch, int order, int clamp_negative,
                                        hopqec_compiled **out);
HOPQEC_API hopqec_status hopqec_compiled_load(const char *path, hopqec_compiled **out);
HOPQEC_API hopqec_status hopqec_compiled_save(const hopqec_compiled *c, const char *path);
HOPQEC_API void hopqec_compiled_free(hopqec_compiled *c);
HOPQEC_API size_t hopqec_compiled_stage_count(const hopqec_compiled *c);
HOPQEC_API double hopqec_compiled_clamped_mass(const hopqec_compiled *c);
/* Largest |composed - target| over all Paulis. */
HOPQEC_API hopqec_status hopqec_compiled_max_error(const hopqec_compiled *c, const hopqec_channel *target,
                                                   double *error);

/* ---- circuits ------------------------------------------------------------------------------ */

typedef struct hopqec_circuit hopqec_circuit;

/* Memory-experiment circuit of distance d with `rounds` noisy rounds and a noiseless final round
 * at gate strength p (p1 = p / 10, p_pm = p / 2). The standard schedule uses two-qubit strength
 * `lambda`; the HOP schedule uses the compiled 5- and 3-qubit channels (ignored for std). */
HOPQEC_API hopqec_status hopqec_circuit_build(hopqec_schedule schedule, int d, int rounds, double p, double lambda,
                                              const hopqec_compiled *five, const hopqec_compiled *three,
                                              hopqec_circuit **out);
HOPQEC_API hopqec_status hopqec_circuit_load(const char *path, hopqec_circuit **out);
HOPQEC_API hopqec_status hopqec_circuit_save(const hopqec_circuit *c, const char *path);
HOPQEC_API void hopqec_circuit_free(hopqec_circuit *c);
HOPQEC_API size_t hopqec_circuit_num_qubits(const hopqec_circuit *c);
HOPQEC_API size_t hopqec_circuit_num_layers(const hopqec_circuit *c);
HOPQEC_API size_t hopqec_circuit_num_detectors(const hopqec_circuit *c);
HOPQEC_API size_t hopqec_circuit_num_observables(const hopqec_circuit *c);

/* ---- sampling and decoding ----------------------------------------------------------------- */

/* Samples detector and observable flips and writes them to `path`: the binary block format, or a
 * text hex dump when `hex` is non-zero. */
HOPQEC_API hopqec_status hopqec_sample_to_file(const hopqec_circuit *c, uint64_t shots, uint64_t seed,
                                               const char *path, int hex);

typedef struct hopqec_failure_stats {
    uint64_t shots;
    uint64_t failures;
    double p_l;
    uint64_t decomposition_warnings;
} hopqec_failure_stats;

/* Samples and decodes with minimum-weight perfect matching. Stops after max_shots, or once
 * target_failures failures are seen (0 disables the early stop). */
HOPQEC_API hopqec_status hopqec_logical_failure_rate(const hopqec_circuit *c, uint64_t max_shots, uint64_t seed,
                                                     uint64_t target_failures, hopqec_failure_stats *out);

/* ---- campaigns, thresholds, fits and resources --------------------------------------------- */

typedef struct hopqec_campaign_config hopqec_campaign_config;
typedef struct hopqec_table hopqec_table;
typedef struct hopqec_fits hopqec_fits;

/* Config is a JSON document with keys schedule, distances, p1_grid, max_shots, target_failures,
 * seed, output_dir and threads. */
HOPQEC_API hopqec_status hopqec_campaign_config_load(const char *path, hopqec_campaign_config **out);
HOPQEC_API hopqec_status hopqec_campaign_config_parse(const char *json_text, hopqec_campaign_config **out);
HOPQEC_API void hopqec_campaign_config_free(hopqec_campaign_config *cfg);
HOPQEC_API const char *hopqec_campaign_config_output_dir(const hopqec_campaign_config *cfg);
HOPQEC_API void hopqec_campaign_config_set_threads(hopqec_campaign_config *cfg, unsigned threads);
HOPQEC_API size_t hopqec_campaign_config_schedule_count(const hopqec_campaign_config *cfg);
HOPQEC_API hopqec_schedule hopqec_campaign_config_schedule(const hopqec_campaign_config *cfg, size_t index);

typedef struct hopqec_row {
    hopqec_schedule schedule;
    int d;
    double p1;
    uint64_t shots;
    uint64_t failures;
    double p_l;
    double ci_low;
    double ci_high;
    uint64_t decomposition_warnings;
} hopqec_row;

typedef void (*hopqec_row_callback)(const hopqec_row *row, void *user);

/* Runs the campaign; `on_row` (may be NULL) is called once per finished point, serialized. */
HOPQEC_API hopqec_status hopqec_campaign_run(const hopqec_campaign_config *cfg, hopqec_row_callback on_row,
                                             void *user, hopqec_table **out);
/* Writes the table as CSV; the metadata header describes `cfg` when given. */
HOPQEC_API hopqec_status hopqec_table_write_csv(const hopqec_table *t, const hopqec_campaign_config *cfg,
                                                const char *path);
HOPQEC_API hopqec_status hopqec_table_load_csv(const char *path, hopqec_table **out);
HOPQEC_API void hopqec_table_free(hopqec_table *t);
HOPQEC_API size_t hopqec_table_size(const hopqec_table *t);
HOPQEC_API hopqec_status hopqec_table_row(const hopqec_table *t, size_t index, hopqec_row *out);

/* Binomial likelihood-ratio interval at the given confidence level. */
HOPQEC_API hopqec_status hopqec_confidence_interval(uint64_t failures, uint64_t shots, double level, double *low,
                                                    double *high);

typedef struct hopqec_threshold_result {
    double p_th;
    double spread;
    size_t crossings;
} hopqec_threshold_result;

HOPQEC_API hopqec_status hopqec_threshold(const hopqec_table *t, hopqec_schedule schedule,
                                          hopqec_threshold_result *out);
/* Crossing `index` of the most recent successful hopqec_threshold call for this table and schedule. */
HOPQEC_API hopqec_status hopqec_threshold_crossing(const hopqec_table *t, hopqec_schedule schedule, size_t index,
                                                   int *d_low, int *d_high, double *p1);

/* Per-distance fits of rows with p1 <= p1_max, then meta-lines across distances. */
HOPQEC_API hopqec_status hopqec_fit(const hopqec_table *t, hopqec_schedule schedule, double p1_max,
                                    hopqec_fits **out);
/* Fits built directly from meta-line coefficients m(d) = m_slope d + m_intercept and
 * log10 c(d) = c_slope d + c_intercept. */
HOPQEC_API hopqec_status hopqec_fits_from_meta(double m_slope, double m_intercept, double c_slope,
                                               double c_intercept, hopqec_fits **out);
HOPQEC_API hopqec_status hopqec_fits_load(const char *path, hopqec_fits **out);
HOPQEC_API hopqec_status hopqec_fits_save(const hopqec_fits *f, const char *path);
HOPQEC_API void hopqec_fits_free(hopqec_fits *f);
HOPQEC_API size_t hopqec_fits_line_count(const hopqec_fits *f);
HOPQEC_API hopqec_status hopqec_fits_line(const hopqec_fits *f, size_t index, int *d, double *log_c, double *m);
HOPQEC_API void hopqec_fits_meta(const hopqec_fits *f, double *m_slope, double *m_intercept, double *c_slope,
                                 double *c_intercept);

typedef struct hopqec_resource_estimate {
    double p1;
    int required_d;
    long long physical_qubits;
    int steps_per_round;
    long long spacetime_volume;
} hopqec_resource_estimate;

HOPQEC_API hopqec_status hopqec_resources(const hopqec_fits *f, double p1, double target_p_l,
                                          hopqec_schedule schedule, hopqec_resource_estimate *out);

#ifdef __cplusplus
}
#endif

#endif
