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

#include <optional>
#include <string>

#include "alpha_opt.hpp"

namespace rsmaharq {

enum class Scheme { RSMA, NOMA, FDMA };

const char* to_string(Scheme s);

struct HarqConfig {
    Scheme scheme = Scheme::RSMA;
    HarqKind kind = HarqKind::CC;
    int max_retx = 2;  // L: retransmissions beyond the first round
    UserProfile user1;
    UserProfile user2;
    double fdma_w1 = 0.5;  // bandwidth fraction of user 1 (FDMA only)
    int noma_alpha = 1;    // 1: decode user 1 first, 0: user 2 first
    // Pin the power split instead of optimizing it. Pinning to 0 or 1
    // disables splitting and reduces the RSMA engine to the NOMA engine.
    std::optional<double> pinned_alpha;
};

/// Per-epoch result. An epoch starts with one fresh packet per user and runs
/// until both users are idle; in the unsplit flows a user whose packet was
/// delivered keeps sending new packets while the other retransmits, so an
/// epoch may carry more than one packet per user.
struct TrialOutcome {
    bool user1_ok = false;  // initial packet of user 1
    bool user2_ok = false;  // initial packet of user 2
    int rounds_used = 0;
    double energy_user1 = 0.0;
    double energy_user2 = 0.0;
    std::uint32_t generated1 = 1;
    std::uint32_t generated2 = 1;
    std::uint32_t failed1 = 0;
    std::uint32_t failed2 = 0;
    double chosen_alpha = 0.0;
    RetxCase round0_case = RetxCase::NoRetx;
};

/// Line-delimited per-round record sink for debugging and log-equality
/// checks. Disabled (null) in production runs.
struct EventLog {
    std::string text;
    void line(const std::string& s) {
        text += s;
        text += '\n';
    }
};

TrialOutcome rsma_trial(const HarqConfig& cfg, const RngStream& rng, EventLog* log = nullptr);
TrialOutcome noma_trial(const HarqConfig& cfg, const RngStream& rng, EventLog* log = nullptr);
TrialOutcome fdma_trial(const HarqConfig& cfg, const RngStream& rng, EventLog* log = nullptr);

TrialOutcome run_trial(const HarqConfig& cfg, const RngStream& rng, EventLog* log = nullptr);

/// Grid search of the FDMA bandwidth split on {0.01, ..., 0.99} with common
/// random numbers across grid points; minimizes the summed Monte Carlo error
/// probabilities of the two users. Deterministic given the seed.
double optimize_fdma_w(const HarqConfig& cfg, std::uint64_t trials, std::uint64_t seed);

}  // namespace rsmaharq
