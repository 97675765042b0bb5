/*
   Copyright 2026 the rsmaharq authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/* C interface of the rsmaharq shared library: two-user uplink RSMA/NOMA/FDMA
 * HARQ Monte Carlo sweeps and closed-form-vs-oracle validation. All handles
 * are opaque; every fallible call returns a status code and leaves a
 * human-readable message in rsma_harq_last_error() (thread-local). */

#ifndef RSMA_HARQ_H
#define RSMA_HARQ_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define RSMA_HARQ_VERSION_STRING "1.0.0"

typedef enum rsma_harq_status {
    RSMA_HARQ_OK = 0,
    RSMA_HARQ_ERR_INVALID_ARG = 1,
    RSMA_HARQ_ERR_IO = 2,
    RSMA_HARQ_ERR_VALIDATION = 3,
    RSMA_HARQ_ERR_INTERNAL = 4
} rsma_harq_status;

typedef struct rsma_harq_spec rsma_harq_spec;
typedef struct rsma_harq_records rsma_harq_records;
typedef struct rsma_harq_validation rsma_harq_validation;

const char* rsma_harq_version(void);

/* Message describing the most recent failure on this thread ("" if none). */
const char* rsma_harq_last_error(void);

/* ---- sweep specification ----------------------------------------------- */

/* A fresh spec with the default experiment settings (RSMA/NOMA/FDMA, CC,
 * L = 2, rates 1.0..3.5 step 0.25, gains 20/15 dB, 1e5 trials, seed 1). */
rsma_harq_spec* rsma_harq_spec_create(void);
void rsma_harq_spec_destroy(rsma_harq_spec* spec);

/* Set one field from text. Keys: schemes, kinds|harq, L_values|retx,
 * rate_start, rate_stop, rate_step, gamma1_db, gamma2_db, trials, seed,
 * threads. List values are comma-separated. */
rsma_harq_status rsma_harq_spec_set(rsma_harq_spec* spec, const char* key,
                                    const char* value);

/* Load "key = value" lines ('#' starts a comment). */
rsma_harq_status rsma_harq_spec_load_file(rsma_harq_spec* spec, const char* path);

/* ---- sweep execution ---------------------------------------------------- */

/* Run the sweep; *out receives a records handle owned by the caller.
 * Deterministic: the same spec yields byte-identical CSV no matter how many
 * worker threads run. */
rsma_harq_status rsma_harq_run_sweep(const rsma_harq_spec* spec,
                                     rsma_harq_records** out);
void rsma_harq_records_destroy(rsma_harq_records* records);

size_t rsma_harq_records_count(const rsma_harq_records* records);

typedef struct rsma_harq_record_view {
    const char* scheme; /* "RSMA" | "NOMA" | "FDMA" (static storage) */
    const char* kind;   /* "CC" | "IR" */
    int32_t l;
    double rate;
    int32_t user; /* 1 or 2 */
    double error_prob;
    double ci95_halfwidth;
    double avg_power_per_packet;
    uint64_t trials;
    uint64_t seed;
    int32_t has_fdma_w1;
    double fdma_w1;
    int32_t has_mean_chosen_alpha;
    double mean_chosen_alpha;
} rsma_harq_record_view;

rsma_harq_status rsma_harq_records_get(const rsma_harq_records* records, size_t index,
                                       rsma_harq_record_view* out);

/* CSV text of all records; the string is owned by the handle and valid until
 * the handle is destroyed. */
const char* rsma_harq_records_csv(rsma_harq_records* records);

rsma_harq_status rsma_harq_records_write_csv(rsma_harq_records* records,
                                             const char* path);

/* ---- oracle validation --------------------------------------------------- */

/* Compare the closed-form error probabilities against the numerical
 * integration oracle and Monte Carlo event counting over `points` random
 * parameter sets. Returns RSMA_HARQ_OK with a handle even when validation
 * fails; query rsma_harq_validation_passed(). mc_draws = 0 skips the Monte
 * Carlo check; threads = 0 uses all hardware threads. */
rsma_harq_status rsma_harq_validate(int points, uint64_t seed, uint64_t mc_draws,
                                    int threads, rsma_harq_validation** out);
void rsma_harq_validation_destroy(rsma_harq_validation* v);

int rsma_harq_validation_passed(const rsma_harq_validation* v);
double rsma_harq_validation_max_rel_err(const rsma_harq_validation* v);
double rsma_harq_validation_max_abs_z(const rsma_harq_validation* v);
const char* rsma_harq_validation_report(const rsma_harq_validation* v);

#ifdef __cplusplus
}
#endif

#endif /* RSMA_HARQ_H */
