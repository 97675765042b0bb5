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

#include "analytic.hpp"

namespace rsmaharq {

/// Power split decision for one packet pair.
struct RetransmissionPlan {
    double chosen_alpha = 0.0;
    RetxCase case_id = RetxCase::NoRetx;
    bool retransmit_s11 = false;
    bool retransmit_s2 = false;
    ErrorPair predicted;  // (0,0) for NO_RETX
};

/// The retransmission case in effect at a specific alpha: the pointwise
/// region label, with the alpha=0/1 endpoints promoted to their special
/// cases when the respective "one stream decoded" precondition holds.
RetxCase pointwise_case(const ChannelDraw& draw, double alpha, double r1, double r2);

/// Predicted next-round error pair for this alpha given the region case.
/// S11_ONLY and S2_ONLY report the same probability for both users: the
/// non-retransmitted content decodes from buffers exactly when the
/// retransmitted stream does.
ErrorPair predict_errors(const ChannelDraw& draw, double alpha, double r1, double r2,
                         double G1, double G2, HarqKind kind, RetxCase region_case);

/// Dispatch on the pointwise case at alpha.
ErrorPair predict_errors(const ChannelDraw& draw, double alpha, double r1, double r2,
                         double G1, double G2, HarqKind kind);

/// Choose alpha for the current packet pair: any alpha in S when no
/// retransmission is needed (midpoint), otherwise the minimizer of
/// p11 + p2 over the classified regions and the applicable special endpoints,
/// found per region by golden-section refinement of a 64-interval grid.
/// Deterministic; ties break toward smaller alpha.
RetransmissionPlan select_alpha(const ChannelDraw& draw, double r1, double r2,
                                double G1, double G2, HarqKind kind);

/// Plan for a pinned alpha (no optimization): classifies the pointwise case
/// at that alpha and fills the predicted errors. Used by the NOMA reduction
/// and by coupled-seed comparisons.
RetransmissionPlan plan_for_alpha(const ChannelDraw& draw, double alpha, double r1,
                                  double r2, double G1, double G2, HarqKind kind);

}  // namespace rsmaharq
