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

#include "rsma_harq.h"

#include <new>
#include <string>

#include "sweep.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

}  // namespace

struct rsma_harq_spec {
    rsmaharq::SweepSpec spec;
};

struct rsma_harq_records {
    std::vector<rsmaharq::SweepRecord> records;
    std::string csv_cache;
};

struct rsma_harq_validation {
    rsmaharq::ValidationReport report;
};

extern "C" {

const char* rsma_harq_version(void) { return RSMA_HARQ_VERSION_STRING; }

const char* rsma_harq_last_error(void) { return g_last_error.c_str(); }

rsma_harq_spec* rsma_harq_spec_create(void) { return new (std::nothrow) rsma_harq_spec(); }

void rsma_harq_spec_destroy(rsma_harq_spec* spec) { delete spec; }

rsma_harq_status rsma_harq_spec_set(rsma_harq_spec* spec, const char* key,
                                    const char* value) {
    if (!spec || !key || !value) {
        set_error("spec_set: null argument");
        return RSMA_HARQ_ERR_INVALID_ARG;
    }
    std::string err;
    if (!rsmaharq::sweep_spec_set(spec->spec, key, value, err)) {
        set_error(err);
        return RSMA_HARQ_ERR_INVALID_ARG;
    }
    set_error("");
    return RSMA_HARQ_OK;
}

rsma_harq_status rsma_harq_spec_load_file(rsma_harq_spec* spec, const char* path) {
    if (!spec || !path) {
        set_error("spec_load_file: null argument");
        return RSMA_HARQ_ERR_INVALID_ARG;
    }
    std::string err;
    if (!rsmaharq::sweep_spec_load_file(spec->spec, path, err)) {
        set_error(err);
        return err.find("cannot open") != std::string::npos ? RSMA_HARQ_ERR_IO
                                                            : RSMA_HARQ_ERR_INVALID_ARG;
    }
    set_error("");
    return RSMA_HARQ_OK;
}

rsma_harq_status rsma_harq_run_sweep(const rsma_harq_spec* spec, rsma_harq_records** out) {
    if (!spec || !out) {
        set_error("run_sweep: null argument");
        return RSMA_HARQ_ERR_INVALID_ARG;
    }
    *out = nullptr;
    const std::string problem = rsmaharq::sweep_spec_problem(spec->spec);
    if (!problem.empty()) {
        set_error(problem);
        return RSMA_HARQ_ERR_INVALID_ARG;
    }
    try {
        auto* handle = new rsma_harq_records();
        handle->records = rsmaharq::run_sweep(spec->spec).records;
        *out = handle;
        set_error("");
        return RSMA_HARQ_OK;
    } catch (const std::exception& e) {
        set_error(e.what());
        return RSMA_HARQ_ERR_INTERNAL;
    }
}

void rsma_harq_records_destroy(rsma_harq_records* records) { delete records; }

size_t rsma_harq_records_count(const rsma_harq_records* records) {
    return records ? records->records.size() : 0;
}

rsma_harq_status rsma_harq_records_get(const rsma_harq_records* records, size_t index,
                                       rsma_harq_record_view* out) {
    if (!records || !out || index >= records->records.size()) {
        set_error("records_get: bad handle or index");
        return RSMA_HARQ_ERR_INVALID_ARG;
    }
    const rsmaharq::SweepRecord& r = records->records[index];
    out->scheme = rsmaharq::to_string(r.scheme);
    out->kind = rsmaharq::to_string(r.kind);
    out->l = r.l;
    out->rate = r.rate;
    out->user = r.user;
    out->error_prob = r.error_prob;
    out->ci95_halfwidth = r.ci95_halfwidth;
    out->avg_power_per_packet = r.avg_power_per_packet;
    out->trials = r.trials;
    out->seed = r.seed;
    out->has_fdma_w1 = r.has_fdma_w1 ? 1 : 0;
    out->fdma_w1 = r.fdma_w1;
    out->has_mean_chosen_alpha = r.has_mean_alpha ? 1 : 0;
    out->mean_chosen_alpha = r.mean_chosen_alpha;
    set_error("");
    return RSMA_HARQ_OK;
}

const char* rsma_harq_records_csv(rsma_harq_records* records) {
    if (!records) return "";
    if (records->csv_cache.empty()) records->csv_cache = rsmaharq::to_csv(records->records);
    return records->csv_cache.c_str();
}

rsma_harq_status rsma_harq_records_write_csv(rsma_harq_records* records, const char* path) {
    if (!records || !path) {
        set_error("write_csv: null argument");
        return RSMA_HARQ_ERR_INVALID_ARG;
    }
    try {
        rsmaharq::write_csv(records->records, path);
        set_error("");
        return RSMA_HARQ_OK;
    } catch (const std::exception& e) {
        set_error(e.what());
        return RSMA_HARQ_ERR_IO;
    }
}

rsma_harq_status rsma_harq_validate(int points, uint64_t seed, uint64_t mc_draws,
                                    int threads, rsma_harq_validation** out) {
    if (!out || points < 1) {
        set_error("validate: need out handle and points >= 1");
        return RSMA_HARQ_ERR_INVALID_ARG;
    }
    *out = nullptr;
    try {
        auto* handle = new rsma_harq_validation();
        handle->report = rsmaharq::run_validate(points, seed, mc_draws, threads);
        *out = handle;
        set_error("");
        return RSMA_HARQ_OK;
    } catch (const std::exception& e) {
        set_error(e.what());
        return RSMA_HARQ_ERR_INTERNAL;
    }
}

void rsma_harq_validation_destroy(rsma_harq_validation* v) { delete v; }

int rsma_harq_validation_passed(const rsma_harq_validation* v) {
    return (v && v->report.passed) ? 1 : 0;
}

double rsma_harq_validation_max_rel_err(const rsma_harq_validation* v) {
    return v ? v->report.max_rel_err : 0.0;
}

double rsma_harq_validation_max_abs_z(const rsma_harq_validation* v) {
    return v ? v->report.max_abs_z : 0.0;
}

const char* rsma_harq_validation_report(const rsma_harq_validation* v) {
    return v ? v->report.text.c_str() : "";
}

}  // extern "C"
