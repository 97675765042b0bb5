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

#include <vector>

#include "channel.hpp"

namespace rsmaharq {

/// Per-round SINRs of the three streams under SIC order s11, s2, s12.
struct SinrTriple {
    double s11 = 0.0;  // alpha*g1 / (1 + (1-alpha)*g1 + g2)
    double s2 = 0.0;   // g2 / (1 + (1-alpha)*g1)
    double s12 = 0.0;  // (1-alpha)*g1
};

SinrTriple sinr_components(const ChannelDraw& draw, double alpha);

/// User-1 sum-rate condition: log2(1+s11) + log2(1+s12) >= r1.
bool cond_user1(const ChannelDraw& draw, double alpha, double r1);
/// User-2 rate condition: log2(1+s2) >= r2.
bool cond_user2(const ChannelDraw& draw, double alpha, double r2);
/// Both conditions at once (no stream needs retransmission at this alpha).
bool all_decodable(const ChannelDraw& draw, double alpha, double r1, double r2);

/// Closed sub-interval of [0,1]; empty() when no alpha qualifies.
struct AlphaInterval {
    double lo = 1.0;
    double hi = 0.0;
    bool empty() const { return lo > hi; }
    bool contains(double a) const { return !empty() && a >= lo && a <= hi; }
    double mid() const { return 0.5 * (lo + hi); }
};

/// Feasibility summary for one channel draw.
///
/// alpha_l / alpha_h are the closed-form boundary values; they are diagnostics
/// only. The feasible sets are always established by direct evaluation of
/// the two rate conditions, because the alpha_h formula silently assumes
/// 2^r1 - 1 - g1 - g2 < 0 and flips meaning when that factor changes sign.
struct AlphaBounds {
    double alpha_l = 0.0;        // -inf sentinel when r2 == 0
    double alpha_h = 0.0;        // NaN when the denominator vanishes
    bool alpha_h_defined = true;
    bool cond2_vacuous = false;  // r2 == 0
    AlphaInterval cond1_set;     // {alpha in [0,1] : user-1 condition holds}
    AlphaInterval cond2_set;     // {alpha in [0,1] : user-2 condition holds}
};

AlphaBounds alpha_bounds(const ChannelDraw& draw, double r1, double r2);

enum class RetxCase {
    NoRetx,
    S2Only,
    S11Only,
    Both,
    SpecialAlpha1,  // alpha = 1 with s1 decoded: s2 retx alongside a new s1
    SpecialAlpha0,  // alpha = 0 with s2 decoded: s1 retx alongside a new s2
};

const char* to_string(RetxCase c);

/// One classification region: for alpha in [lo, hi] the given streams retransmit.
struct AlphaRegion {
    double lo = 0.0;
    double hi = 0.0;
    RetxCase kind = RetxCase::Both;
};

/// Full retransmission-region classification of a draw. `regions` partitions [0,1];
/// boundary alphas belong to the case with fewer retransmitted streams
/// (both rate conditions are closed sets, so a boundary point satisfies
/// the condition that defines it). `case_id` is NoRetx when S of the
/// no-retransmission condition is nonempty, the unique region case when the
/// partition is uniform, and Both when the partition is mixed.
struct Classification {
    RetxCase case_id = RetxCase::Both;
    std::vector<AlphaRegion> regions;
    AlphaInterval no_retx_set;  // S: intersection of the two feasible sets
};

Classification classify(const AlphaBounds& bounds);

/// The alpha=1 special case applies when s1 decodes at alpha=1 but s2 does
/// not: user 1 then sends new packets while s2 retransmits.
bool special_alpha1_applies(const ChannelDraw& draw, double r1, double r2);
/// Mirror case at alpha=0 (s2 decoded, s1 pending).
bool special_alpha0_applies(const ChannelDraw& draw, double r1, double r2);

}  // namespace rsmaharq
