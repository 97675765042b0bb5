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

#pragma once

#include <string>
#include <vector>

#include "harq.hpp"

namespace rsmaharq {

/// A sweep over (scheme, kind, L, rate) with a fixed per-point trial count.
/// Both users run the same rate (they require the same service).
struct SweepSpec {
    std::vector<Scheme> schemes = {Scheme::RSMA, Scheme::NOMA, Scheme::FDMA};
    std::vector<HarqKind> kinds = {HarqKind::CC};
    std::vector<int> l_values = {2};
    double rate_start = 1.0;
    double rate_stop = 3.5;
    double rate_step = 0.25;
    double gamma1_db = 20.0;
    double gamma2_db = 15.0;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    int threads = 0;  // 0: one worker per hardware thread

    std::vector<double> rates() const;
};

/// Set one spec field from its textual form. Returns false and fills `err`
/// on unknown keys or unparseable values.
bool sweep_spec_set(SweepSpec& spec, const std::string& key, const std::string& value,
                    std::string& err);
/// Load `key = value` lines ('#' comments) into the spec.
bool sweep_spec_load_file(SweepSpec& spec, const std::string& path, std::string& err);
/// Validation run before a sweep; empty string when the spec is usable.
std::string sweep_spec_problem(const SweepSpec& spec);

/// One CSV row: per (scheme, kind, L, rate, user). avg_power_per_packet is
/// the scheme-level energy per packet (both users' energy over both users'
/// packets), repeated on the two user rows.
struct SweepRecord {
    Scheme scheme = Scheme::RSMA;
    HarqKind kind = HarqKind::CC;
    int l = 0;
    double rate = 0.0;
    int user = 1;
    double error_prob = 0.0;
    double ci95_halfwidth = 0.0;
    double avg_power_per_packet = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    bool has_fdma_w1 = false;
    double fdma_w1 = 0.0;
    bool has_mean_alpha = false;
    double mean_chosen_alpha = 0.0;
};

/// Per-point aggregates that do not fit the CSV schema; parallel to the
/// sweep points (one entry per two records).
struct PointStats {
    Scheme scheme = Scheme::RSMA;
    HarqKind kind = HarqKind::CC;
    int l = 0;
    double rate = 0.0;
    std::uint64_t generated[2] = {0, 0};
    std::uint64_t failed[2] = {0, 0};
    double energy[2] = {0.0, 0.0};
    double power_per_packet = 0.0;
    double power_ci95_halfwidth = 0.0;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::vector<PointStats> stats;
};

SweepResult run_sweep(const SweepSpec& spec);

/// Wilson 95% interval half-width for `fails` out of `n`.
double wilson_halfwidth(std::uint64_t fails, std::uint64_t n);
double wilson_center(std::uint64_t fails, std::uint64_t n);

std::string to_csv(const std::vector<SweepRecord>& records);
void write_csv(const std::vector<SweepRecord>& records, const std::string& path);
std::vector<SweepRecord> parse_csv(const std::string& text);

/// Closed-form vs. oracle validation over a random parameter grid spanning
/// both branches of the joint and special-case expressions, for CC- and
/// IR-style thresholds.
struct ValidationReport {
    bool passed = false;
    double max_rel_err = 0.0;
    double max_abs_z = 0.0;
    int points = 0;
    int z_points = 0;       // points with an informative MC z-check
    int z_failures = 0;     // |z| > 4
    int nonconverged = 0;   // oracle convergence failures
    std::string text;       // per-point lines plus summary
};

ValidationReport run_validate(int grid_size, std::uint64_t seed,
                              std::uint64_t mc_draws = 1000000, int threads = 0);

}  // namespace rsmaharq
