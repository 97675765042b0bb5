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

#include "rsma_model.hpp"

namespace rsmaharq {

enum class HarqKind { CC, IR };

const char* to_string(HarqKind k);

/// Error probabilities of the two users' pending content after the next
/// retransmission round.
struct ErrorPair {
    double p11 = 0.0;  // user 1
    double p2 = 0.0;   // user 2
    double sum() const { return p11 + p2; }
};

/// Residual thresholds for the round where both s11 and s2 retransmit.
///
/// g11_1 / g2_1 gate the "decode first, other stream still interfering"
/// events; g11_2 / g2_2 gate the retry after the other stream was decoded
/// and stripped from the buffered round as well.
struct ThresholdSet {
    double g11_1 = 0.0;
    double g2_1 = 0.0;
    double g11_2 = 0.0;
    double g2_2 = 0.0;
    double c = 0.0;         // outer-integral cutoff when g11_1*g2_1 < 1
    bool c_defined = false;
    HarqKind kind = HarqKind::CC;
};

/// P{Exp(mean) < threshold} with negative thresholds clamped to zero.
double exp_tail(double threshold, double mean);

/// Residual threshold on |h1|^2 when only s11 retransmits (clean channel,
/// power alpha), chase combining. Derived from the probability statement
/// P{log2(1 + s11 + alpha|h1|^2) < r1 - log2(1 + s12)}; the split stream's
/// round-0 rate sits in the 2^r1 denominator.
double residual_s11_cc(const SinrTriple& sinr, double alpha, double r1);
/// Residual threshold on |h2|^2 when only s2 retransmits, chase combining.
double residual_s2_cc(const SinrTriple& sinr, double r2);
/// Incremental-redundancy analogues (accumulated rate instead of SINR).
double residual_s11_ir(const SinrTriple& sinr, double alpha, double r1);
double residual_s2_ir(const SinrTriple& sinr, double r2);

ThresholdSet joint_thresholds(const ChannelDraw& draw, double alpha, double r1,
                              double r2, HarqKind kind);

/// Closed forms of the three failure events of the both-retransmit round,
/// with X ~ Exp(G1), Y ~ Exp(G2) the retransmission-round gains:
///   term1: neither stream decodable first
///          P{aX/(1+Y) < a1, Y/(1+aX) < b1}
///   term2: s2 first, s11 still short after the cancellation
///          P{Y/(1+aX) >= b1, aX < a2}
///   term3: s11 first, s2 still short
///          P{aX/(1+Y) >= a1, Y < b2}
/// Any threshold may be negative; the affected constraint then binds nothing
/// and the event collapses accordingly.
double joint_term1(double a1, double b1, double alpha, double G1, double G2);
double joint_term2(double b1, double a2, double alpha, double G1, double G2);
double joint_term3(double a1, double b2, double alpha, double G1, double G2);

/// Both-retransmit error pair: p11 = term1+term2+term3 (user-1 message fails
/// if s2 does, since s12 rides on it), p2 = term1+term3.
/// Throws if a result leaves [-1e-12, 1+1e-12]; results are clamped to [0,1].
ErrorPair p_joint(const ThresholdSet& ts, double G1, double G2, double alpha);

enum class SpecialCase { Alpha1, Alpha0 };

struct SpecialThresholds {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

SpecialThresholds special_thresholds(const ChannelDraw& draw, double r1, double r2,
                                     SpecialCase which, HarqKind kind);

/// Special-case error pair at full power (alpha = 1 in the event algebra):
/// p1 = term1+term2 covers the stream with no cross dependence (the new
/// packet at alpha=1, the retransmitted s1 at alpha=0), p2 = term1+term3.
ErrorPair p_special_from(const SpecialThresholds& st, double G1, double G2);
ErrorPair p_special(const ChannelDraw& draw, double r1, double r2, double G1,
                    double G2, SpecialCase which, HarqKind kind);

}  // namespace rsmaharq
