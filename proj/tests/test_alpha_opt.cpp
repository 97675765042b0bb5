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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "alpha_opt.hpp"

using namespace rsmaharq;

namespace {

constexpr double kG1 = 100.0;
constexpr double kG2 = 31.6227766;

double objective(const ChannelDraw& d, double a, double r1, double r2, HarqKind kind) {
    return predict_errors(d, a, r1, r2, kG1, kG2, kind).sum();
}

}  // namespace

TEST_CASE("predict_errors: dispatch basics") {
    const ChannelDraw d{4.0, 1.0};
    const ErrorPair none = predict_errors(d, 0.5, 1.0, 1.0, kG1, kG2, HarqKind::CC,
                                          RetxCase::NoRetx);
    CHECK(none.p11 == 0.0);
    CHECK(none.p2 == 0.0);

    // Single-stream retransmissions report the same probability for both
    // users: the buffered content decodes exactly when the stream does.
    const ErrorPair s11 = predict_errors(d, 0.6, 3.0, 0.5, kG1, kG2, HarqKind::CC,
                                         RetxCase::S11Only);
    CHECK(s11.p11 == s11.p2);
    const ErrorPair s2 = predict_errors(d, 0.6, 0.5, 3.0, kG1, kG2, HarqKind::CC,
                                        RetxCase::S2Only);
    CHECK(s2.p11 == s2.p2);
}

TEST_CASE("S2_ONLY error sum decreases in alpha (optimum at the right edge)") {
    // Draw with cond1 holding everywhere and cond2 never: the admissible
    // interval is [0,1] and sigma_2 grows with alpha.
    const ChannelDraw d{30.0, 0.5};
    const double r1 = 1.0, r2 = 2.0;
    REQUIRE(cond_user1(d, 1.0, r1));
    REQUIRE_FALSE(cond_user2(d, 1.0, r2));
    double prev = 2.0;
    for (int i = 0; i <= 50; ++i) {
        const double a = i / 50.0 * 0.999;  // stay inside the S2-only region
        const double v = objective(d, a, r1, r2, HarqKind::CC);
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
}

TEST_CASE("select_alpha: no retransmission when S is nonempty") {
    const RetransmissionPlan plan = select_alpha({4.0, 1.0}, 1.0, 1.0, kG1, kG2, HarqKind::CC);
    CHECK(plan.case_id == RetxCase::NoRetx);
    CHECK(plan.chosen_alpha == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(plan.retransmit_s11);
    CHECK_FALSE(plan.retransmit_s2);
    CHECK(plan.predicted.p11 == 0.0);
    CHECK(plan.predicted.p2 == 0.0);
}

TEST_CASE("select_alpha: huge r1 with r2 = 0 leaves only user 1 retransmitting") {
    // The user-2 condition is vacuous, so the s11-only region covers all of
    // (0,1); at exactly alpha = 0 the "s2 decoded" precondition holds
    // trivially and the special case competes as a candidate.
    const Classification cls = classify(alpha_bounds({4.0, 1.0}, 9.0, 0.0));
    REQUIRE(cls.regions.size() == 1);
    CHECK(cls.regions[0].kind == RetxCase::S11Only);

    const RetransmissionPlan plan = select_alpha({4.0, 1.0}, 9.0, 0.0, kG1, kG2, HarqKind::CC);
    CHECK((plan.case_id == RetxCase::S11Only || plan.case_id == RetxCase::SpecialAlpha0));
    CHECK(plan.retransmit_s11);
    CHECK_FALSE(plan.retransmit_s2);
    if (plan.case_id == RetxCase::S11Only) {
        CHECK(plan.predicted.p11 == plan.predicted.p2);
    }
}

TEST_CASE("select_alpha: chosen alpha satisfies its region's inequalities") {
    const RngStream rng(41, 0);
    for (int k = 0; k < 2000; ++k) {
        const ChannelDraw d{rng.exponential(kG1, k, 0), rng.exponential(kG2, k, 1)};
        const double r1 = 0.25 + 3.0 * rng.uniform01(k, 2);
        const double r2 = 0.25 + 3.0 * rng.uniform01(k, 3);
        const HarqKind kind = (k % 2 == 0) ? HarqKind::CC : HarqKind::IR;
        const RetransmissionPlan plan = select_alpha(d, r1, r2, kG1, kG2, kind);
        const bool c1 = cond_user1(d, plan.chosen_alpha, r1);
        const bool c2 = cond_user2(d, plan.chosen_alpha, r2);
        switch (plan.case_id) {
            case RetxCase::NoRetx:
                CHECK(c1);
                CHECK(c2);
                break;
            case RetxCase::S2Only:
                CHECK(c1);
                CHECK_FALSE(c2);
                break;
            case RetxCase::S11Only:
                CHECK(c2);
                CHECK_FALSE(c1);
                break;
            case RetxCase::Both:
                CHECK_FALSE(c1);
                CHECK_FALSE(c2);
                break;
            case RetxCase::SpecialAlpha1:
                CHECK(plan.chosen_alpha == 1.0);
                CHECK(c1);
                CHECK_FALSE(c2);
                break;
            case RetxCase::SpecialAlpha0:
                CHECK(plan.chosen_alpha == 0.0);
                CHECK(c2);
                CHECK_FALSE(c1);
                break;
        }
        const Classification cls = classify(alpha_bounds(d, r1, r2));
        CHECK((plan.case_id == RetxCase::NoRetx) == !cls.no_retx_set.empty());
    }
}

TEST_CASE("select_alpha objective is near the fine-grid minimum") {
    const RngStream rng(23, 0);
    int checked = 0;
    for (int k = 0; k < 600; ++k) {
        const ChannelDraw d{rng.exponential(kG1, k, 0), rng.exponential(kG2, k, 1)};
        const double r1 = 0.25 + 3.25 * rng.uniform01(k, 2);
        const double r2 = 0.25 + 3.25 * rng.uniform01(k, 3);
        const HarqKind kind = (k % 2 == 0) ? HarqKind::CC : HarqKind::IR;
        const RetransmissionPlan plan = select_alpha(d, r1, r2, kG1, kG2, kind);
        if (plan.case_id == RetxCase::NoRetx) continue;
        ++checked;
        double grid_min = 2.0;
        for (int i = 0; i <= 1000; ++i) {
            grid_min = std::min(grid_min, objective(d, i / 1000.0, r1, r2, kind));
        }
        CHECK(plan.predicted.sum() <= grid_min + 1e-6);
    }
    CHECK(checked > 50);
}
