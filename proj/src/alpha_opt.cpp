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

#include "alpha_opt.hpp"

#include <algorithm>
#include <cmath>

namespace rsmaharq {

RetxCase pointwise_case(const ChannelDraw& draw, double alpha, double r1, double r2) {
    const bool c1 = cond_user1(draw, alpha, r1);
    const bool c2 = cond_user2(draw, alpha, r2);
    if (c1 && c2) return RetxCase::NoRetx;
    if (alpha == 1.0 && c1) return RetxCase::SpecialAlpha1;
    if (alpha == 0.0 && c2) return RetxCase::SpecialAlpha0;
    if (c1) return RetxCase::S2Only;
    if (c2) return RetxCase::S11Only;
    return RetxCase::Both;
}

ErrorPair predict_errors(const ChannelDraw& draw, double alpha, double r1, double r2,
                         double G1, double G2, HarqKind kind, RetxCase region_case) {
    switch (region_case) {
        case RetxCase::NoRetx:
            return {};
        case RetxCase::S2Only: {
            const SinrTriple s = sinr_components(draw, alpha);
            const double gamma = (kind == HarqKind::CC) ? residual_s2_cc(s, r2)
                                                        : residual_s2_ir(s, r2);
            const double p = exp_tail(gamma, G2);
            return {p, p};
        }
        case RetxCase::S11Only: {
            const SinrTriple s = sinr_components(draw, alpha);
            const double gamma = (kind == HarqKind::CC) ? residual_s11_cc(s, alpha, r1)
                                                        : residual_s11_ir(s, alpha, r1);
            const double p = exp_tail(gamma, G1);
            return {p, p};
        }
        case RetxCase::Both: {
            // The joint events degenerate at alpha = 0; the formulas are
            // continuous, so evaluate a hair inside.
            const double a = std::max(alpha, 1e-9);
            return p_joint(joint_thresholds(draw, a, r1, r2, kind), G1, G2, a);
        }
        case RetxCase::SpecialAlpha1:
            return p_special(draw, r1, r2, G1, G2, SpecialCase::Alpha1, kind);
        case RetxCase::SpecialAlpha0:
            return p_special(draw, r1, r2, G1, G2, SpecialCase::Alpha0, kind);
    }
    return {};
}

ErrorPair predict_errors(const ChannelDraw& draw, double alpha, double r1, double r2,
                         double G1, double G2, HarqKind kind) {
    return predict_errors(draw, alpha, r1, r2, G1, G2, kind,
                          pointwise_case(draw, alpha, r1, r2));
}

namespace {

constexpr double kInvPhi = 0.6180339887498949;

struct Best {
    double alpha = 0.0;
    double value = std::numeric_limits<double>::infinity();
    void offer(double a, double v) {
        if (v < value || (v == value && a < alpha)) {
            alpha = a;
            value = v;
        }
    }
};

}  // namespace

RetransmissionPlan select_alpha(const ChannelDraw& draw, double r1, double r2,
                                double G1, double G2, HarqKind kind) {
    const AlphaBounds bounds = alpha_bounds(draw, r1, r2);
    const Classification cls = classify(bounds);

    RetransmissionPlan plan;
    if (!cls.no_retx_set.empty()) {
        plan.chosen_alpha = cls.no_retx_set.mid();
        plan.case_id = RetxCase::NoRetx;
        return plan;
    }

    const auto objective = [&](double a) {
        return predict_errors(draw, a, r1, r2, G1, G2, kind).sum();
    };

    Best best;
    for (const AlphaRegion& region : cls.regions) {
        constexpr int kGrid = 64;
        const double region_lo = region.lo;
        const double span = region.hi - region_lo;
        Best local;
        int local_i = 0;
        for (int i = 0; i <= kGrid; ++i) {
            const double a = region_lo + span * i / kGrid;
            const double v = objective(a);
            if (v < local.value) local_i = i;
            local.offer(a, v);
        }
        // Golden-section refinement inside the bracketing grid cells.
        double lo = region_lo + span * std::max(local_i - 1, 0) / kGrid;
        double hi = region_lo + span * std::min(local_i + 1, kGrid) / kGrid;
        double x1 = hi - kInvPhi * (hi - lo);
        double x2 = lo + kInvPhi * (hi - lo);
        double f1 = objective(x1);
        double f2 = objective(x2);
        local.offer(x1, f1);
        local.offer(x2, f2);
        for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - kInvPhi * (hi - lo);
                f1 = objective(x1);
                local.offer(x1, f1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + kInvPhi * (hi - lo);
                f2 = objective(x2);
                local.offer(x2, f2);
            }
        }
        best.offer(local.alpha, local.value);
    }

    return plan_for_alpha(draw, best.alpha, r1, r2, G1, G2, kind);
}

RetransmissionPlan plan_for_alpha(const ChannelDraw& draw, double alpha, double r1,
                                  double r2, double G1, double G2, HarqKind kind) {
    RetransmissionPlan plan;
    plan.chosen_alpha = alpha;
    plan.case_id = pointwise_case(draw, alpha, r1, r2);
    plan.predicted = predict_errors(draw, alpha, r1, r2, G1, G2, kind, plan.case_id);
    switch (plan.case_id) {
        case RetxCase::NoRetx:
            break;
        case RetxCase::S2Only:
        case RetxCase::SpecialAlpha1:
            plan.retransmit_s2 = true;
            break;
        case RetxCase::S11Only:
        case RetxCase::SpecialAlpha0:
            plan.retransmit_s11 = true;
            break;
        case RetxCase::Both:
            plan.retransmit_s11 = true;
            plan.retransmit_s2 = true;
            break;
    }
    return plan;
}

}  // namespace rsmaharq
