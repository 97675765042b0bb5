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

// Command-line front end; talks to the core only through the C API.

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "rsma_harq.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitValidation = 2;

struct SpecHandle {
    rsma_harq_spec* spec = rsma_harq_spec_create();
    ~SpecHandle() { rsma_harq_spec_destroy(spec); }
};

struct RecordsHandle {
    rsma_harq_records* records = nullptr;
    ~RecordsHandle() { rsma_harq_records_destroy(records); }
};

int fail_config(const std::string& where) {
    std::fprintf(stderr, "error: %s: %s\n", where.c_str(), rsma_harq_last_error());
    return kExitConfig;
}

int apply(rsma_harq_spec* spec, const char* key, const std::string& value) {
    if (rsma_harq_spec_set(spec, key, value.c_str()) != RSMA_HARQ_OK) {
        return fail_config(std::string("--") + key);
    }
    return kExitOk;
}

void print_record(const rsma_harq_record_view& r) {
    std::printf("scheme: %s\n", r.scheme);
    std::printf("kind: %s\n", r.kind);
    std::printf("L: %d\n", r.l);
    std::printf("rate: %.6g\n", r.rate);
    std::printf("user: %d\n", r.user);
    std::printf("error_prob: %.6g\n", r.error_prob);
    std::printf("ci95_halfwidth: %.6g\n", r.ci95_halfwidth);
    std::printf("avg_power_per_packet: %.6g\n", r.avg_power_per_packet);
    std::printf("trials: %llu\n", static_cast<unsigned long long>(r.trials));
    std::printf("seed: %llu\n", static_cast<unsigned long long>(r.seed));
    if (r.has_fdma_w1) std::printf("fdma_w1: %.6g\n", r.fdma_w1);
    if (r.has_mean_chosen_alpha) std::printf("mean_chosen_alpha: %.6g\n", r.mean_chosen_alpha);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-user uplink RSMA/NOMA/FDMA HARQ simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", rsma_harq_version());

    // sweep -----------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over (scheme, kind, L, rate)");
    std::string cfg_path, schemes, harq, retx, out_path;
    std::string gamma1, gamma2, rate_start, rate_stop, rate_step, trials, seed, threads;
    sweep->add_option("--config", cfg_path, "key = value config file (flags override it)");
    sweep->add_option("--schemes", schemes, "comma list of RSMA,NOMA,FDMA");
    sweep->add_option("--harq", harq, "comma list of CC,IR");
    sweep->add_option("--retx", retx, "comma list of retransmission budgets L");
    sweep->add_option("--gamma1-db", gamma1, "average gain of user 1 [dB]");
    sweep->add_option("--gamma2-db", gamma2, "average gain of user 2 [dB]");
    sweep->add_option("--rate-start", rate_start, "first rate [bit/s/Hz]");
    sweep->add_option("--rate-stop", rate_stop, "last rate [bit/s/Hz]");
    sweep->add_option("--rate-step", rate_step, "rate grid step");
    sweep->add_option("--trials", trials, "Monte Carlo trials per point");
    sweep->add_option("--seed", seed, "master seed");
    sweep->add_option("--threads", threads, "worker threads (0 = all)");
    sweep->add_option("--out", out_path, "CSV output path (stdout when omitted)");

    // validate ---------------------------------------------------------------
    auto* validate = app.add_subcommand("validate", "closed forms vs. quadrature and Monte Carlo oracles");
    int v_points = 200;
    std::uint64_t v_seed = 1;
    std::uint64_t v_draws = 1000000;
    int v_threads = 0;
    validate->add_option("--points", v_points, "random parameter sets");
    validate->add_option("--seed", v_seed, "master seed");
    validate->add_option("--mc-draws", v_draws, "Monte Carlo draws per point (0 = skip)");
    validate->add_option("--threads", v_threads, "worker threads (0 = all)");

    // single -----------------------------------------------------------------
    auto* single = app.add_subcommand("single", "one configuration, printed as key: value");
    std::string s_scheme = "RSMA", s_harq = "CC";
    std::string s_retx = "2", s_rate = "1.0";
    std::string s_gamma1 = "20", s_gamma2 = "15", s_trials = "100000", s_seed = "1", s_threads;
    single->add_option("--scheme", s_scheme, "RSMA, NOMA or FDMA");
    single->add_option("--harq", s_harq, "CC or IR");
    single->add_option("--retx", s_retx, "retransmission budget L");
    single->add_option("--rate", s_rate, "rate of both users [bit/s/Hz]");
    single->add_option("--gamma1-db", s_gamma1, "average gain of user 1 [dB]");
    single->add_option("--gamma2-db", s_gamma2, "average gain of user 2 [dB]");
    single->add_option("--trials", s_trials, "Monte Carlo trials");
    single->add_option("--seed", s_seed, "master seed");
    single->add_option("--threads", s_threads, "worker threads (0 = all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    if (sweep->parsed()) {
        SpecHandle h;
        if (!cfg_path.empty() && rsma_harq_spec_load_file(h.spec, cfg_path.c_str()) != RSMA_HARQ_OK) {
            return fail_config("--config");
        }
        int rc;
        if (!schemes.empty() && (rc = apply(h.spec, "schemes", schemes))) return rc;
        if (!harq.empty() && (rc = apply(h.spec, "harq", harq))) return rc;
        if (!retx.empty() && (rc = apply(h.spec, "retx", retx))) return rc;
        if (!gamma1.empty() && (rc = apply(h.spec, "gamma1_db", gamma1))) return rc;
        if (!gamma2.empty() && (rc = apply(h.spec, "gamma2_db", gamma2))) return rc;
        if (!rate_start.empty() && (rc = apply(h.spec, "rate_start", rate_start))) return rc;
        if (!rate_stop.empty() && (rc = apply(h.spec, "rate_stop", rate_stop))) return rc;
        if (!rate_step.empty() && (rc = apply(h.spec, "rate_step", rate_step))) return rc;
        if (!trials.empty() && (rc = apply(h.spec, "trials", trials))) return rc;
        if (!seed.empty() && (rc = apply(h.spec, "seed", seed))) return rc;
        if (!threads.empty() && (rc = apply(h.spec, "threads", threads))) return rc;

        RecordsHandle rec;
        if (rsma_harq_run_sweep(h.spec, &rec.records) != RSMA_HARQ_OK) {
            return fail_config("sweep");
        }
        if (out_path.empty()) {
            std::fputs(rsma_harq_records_csv(rec.records), stdout);
        } else if (rsma_harq_records_write_csv(rec.records, out_path.c_str()) != RSMA_HARQ_OK) {
            std::fprintf(stderr, "error: --out: %s\n", rsma_harq_last_error());
            return kExitConfig;
        }
        return kExitOk;
    }

    if (validate->parsed()) {
        rsma_harq_validation* v = nullptr;
        if (rsma_harq_validate(v_points, v_seed, v_draws, v_threads, &v) != RSMA_HARQ_OK) {
            std::fprintf(stderr, "error: validate: %s\n", rsma_harq_last_error());
            return kExitConfig;
        }
        std::fputs(rsma_harq_validation_report(v), stdout);
        const bool passed = rsma_harq_validation_passed(v) != 0;
        rsma_harq_validation_destroy(v);
        return passed ? kExitOk : kExitValidation;
    }

    if (single->parsed()) {
        SpecHandle h;
        int rc;
        if ((rc = apply(h.spec, "schemes", s_scheme))) return rc;
        if ((rc = apply(h.spec, "harq", s_harq))) return rc;
        if ((rc = apply(h.spec, "retx", s_retx))) return rc;
        if ((rc = apply(h.spec, "rate_start", s_rate))) return rc;
        if ((rc = apply(h.spec, "rate_stop", s_rate))) return rc;
        if ((rc = apply(h.spec, "rate_step", "1"))) return rc;
        if ((rc = apply(h.spec, "gamma1_db", s_gamma1))) return rc;
        if ((rc = apply(h.spec, "gamma2_db", s_gamma2))) return rc;
        if ((rc = apply(h.spec, "trials", s_trials))) return rc;
        if ((rc = apply(h.spec, "seed", s_seed))) return rc;
        if (!s_threads.empty() && (rc = apply(h.spec, "threads", s_threads))) return rc;

        RecordsHandle rec;
        if (rsma_harq_run_sweep(h.spec, &rec.records) != RSMA_HARQ_OK) {
            return fail_config("single");
        }
        const size_t n = rsma_harq_records_count(rec.records);
        for (size_t i = 0; i < n; ++i) {
            rsma_harq_record_view view;
            if (rsma_harq_records_get(rec.records, i, &view) != RSMA_HARQ_OK) {
                return fail_config("single");
            }
            if (i > 0) std::printf("\n");
            print_record(view);
        }
        return kExitOk;
    }

    return kExitConfig;
}
