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

#include <array>
#include <cstdint>

namespace rsmaharq {

/// Average channel statistics and rate demand of one user.
struct UserProfile {
    double avg_gain_db = 0.0;  // mean power gain in dB
    double rate = 0.0;         // target rate in bit/s/Hz

    double avg_gain_linear() const;
};

/// Instantaneous channel power gains of the two users for one round.
struct ChannelDraw {
    double g1 = 0.0;
    double g2 = 0.0;
};

double db_to_linear(double x_db);
double linear_to_db(double x);

/// Philox4x32-10 block function (Salmon et al., SC'11). Pure: the output is
/// a function of (counter, key) only, which is what makes the streams
/// reproducible under any parallel schedule.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// A counter-based random stream identified by (seed, stream_id, domain).
///
/// Values are indexed by (round, slot) rather than produced sequentially, so
/// the same (seed, stream_id) always yields the same gain sequence no matter
/// how many workers run or in which order trials complete. Distinct
/// stream_ids are distinct streams by construction (the id lives in the
/// Philox counter). `domain` separates unrelated uses of the same seed
/// (trials vs. validation points).
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t domain = 0);

    /// Uniform in (0,1), never exactly 0 or 1.
    double uniform01(std::uint64_t round, std::uint32_t slot) const;

    /// Two independent uniforms from one generator block (slot 0).
    struct UniformPair {
        double u1, u2;
    };
    UniformPair pair_uniform01(std::uint64_t round) const;

    /// Exponential with the given mean (mean >= 0; mean 0 degenerates to 0).
    double exponential(double mean, std::uint64_t round, std::uint32_t slot) const;

    /// Two independent exponential gains for one round. Uses slot 0; callers
    /// needing extra randomness in the same round must use slots >= 1.
    ChannelDraw draw_round(const UserProfile& p1, const UserProfile& p2,
                           std::uint64_t round) const;

    std::uint64_t stream_id() const { return stream_id_; }

  private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_id_;
};

/// One exponential gain draw for `profile` (|h|^2 with mean Gamma).
double sample_gain(const UserProfile& profile, const RngStream& rng,
                   std::uint64_t round, std::uint32_t slot);

}  // namespace rsmaharq
