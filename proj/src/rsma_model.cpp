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

#include "rsma_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rsmaharq {

SinrTriple sinr_components(const ChannelDraw& draw, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("sinr_components: alpha outside [0,1]");
    if (draw.g1 < 0.0 || draw.g2 < 0.0) throw std::invalid_argument("sinr_components: negative gain");
    SinrTriple s;
    s.s11 = alpha * draw.g1 / (1.0 + (1.0 - alpha) * draw.g1 + draw.g2);
    s.s2 = draw.g2 / (1.0 + (1.0 - alpha) * draw.g1);
    s.s12 = (1.0 - alpha) * draw.g1;
    return s;
}

bool cond_user1(const ChannelDraw& draw, double alpha, double r1) {
    const SinrTriple s = sinr_components(draw, alpha);
    return std::log2(1.0 + s.s11) + std::log2(1.0 + s.s12) >= r1;
}

bool cond_user2(const ChannelDraw& draw, double alpha, double r2) {
    const SinrTriple s = sinr_components(draw, alpha);
    return std::log2(1.0 + s.s2) >= r2;
}

bool all_decodable(const ChannelDraw& draw, double alpha, double r1, double r2) {
    return cond_user1(draw, alpha, r1) && cond_user2(draw, alpha, r2);
}

namespace {

// The user-1 sum rate is nonincreasing in alpha and the user-2 rate is
// nondecreasing, so each feasible set is a one-sided interval. The boundary
// is located by bisection on the monotone condition itself.
AlphaInterval upper_interval_cond1(const ChannelDraw& draw, double r1) {
    AlphaInterval out;
    if (!cond_user1(draw, 0.0, r1)) return out;  // empty: max over alpha is at 0
    if (cond_user1(draw, 1.0, r1)) {
        out.lo = 0.0;
        out.hi = 1.0;
        return out;
    }
    double lo = 0.0, hi = 1.0;  // holds at lo, fails at hi
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cond_user1(draw, mid, r1) ? lo : hi) = mid;
    }
    out.lo = 0.0;
    out.hi = lo;
    return out;
}

AlphaInterval lower_interval_cond2(const ChannelDraw& draw, double r2) {
    AlphaInterval out;
    if (!cond_user2(draw, 1.0, r2)) return out;
    if (cond_user2(draw, 0.0, r2)) {
        out.lo = 0.0;
        out.hi = 1.0;
        return out;
    }
    double lo = 0.0, hi = 1.0;  // fails at lo, holds at hi
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cond_user2(draw, mid, r2) ? hi : lo) = mid;
    }
    out.lo = hi;
    out.hi = 1.0;
    return out;
}

}  // namespace

AlphaBounds alpha_bounds(const ChannelDraw& draw, double r1, double r2) {
    if (r1 < 0.0 || r2 < 0.0) throw std::invalid_argument("alpha_bounds: negative rate");
    AlphaBounds b;
    const double g1 = draw.g1, g2 = draw.g2;
    const double k1 = std::exp2(r1) - 1.0;

    const double denom = g1 * (k1 - g1 - g2);
    if (denom == 0.0) {
        b.alpha_h = std::numeric_limits<double>::quiet_NaN();
        b.alpha_h_defined = false;
    } else {
        b.alpha_h = (k1 * (1.0 + g1 + g2) - g1 - g1 * g2 - g1 * g1) / denom;
    }

    if (r2 == 0.0) {
        b.alpha_l = -std::numeric_limits<double>::infinity();
        b.cond2_vacuous = true;
    } else if (g1 == 0.0) {
        b.alpha_l = std::numeric_limits<double>::quiet_NaN();
    } else {
        b.alpha_l = 1.0 + 1.0 / g1 - g2 / (g1 * (std::exp2(r2) - 1.0));
    }

    b.cond1_set = upper_interval_cond1(draw, r1);
    b.cond2_set = lower_interval_cond2(draw, r2);
    return b;
}

const char* to_string(RetxCase c) {
    switch (c) {
        case RetxCase::NoRetx: return "NO_RETX";
        case RetxCase::S2Only: return "S2_ONLY";
        case RetxCase::S11Only: return "S11_ONLY";
        case RetxCase::Both: return "BOTH";
        case RetxCase::SpecialAlpha1: return "SPECIAL_ALPHA1";
        case RetxCase::SpecialAlpha0: return "SPECIAL_ALPHA0";
    }
    return "?";
}

Classification classify(const AlphaBounds& bounds) {
    Classification out;
    const AlphaInterval& c1 = bounds.cond1_set;
    const AlphaInterval& c2 = bounds.cond2_set;

    if (!c1.empty() && !c2.empty()) {
        const double lo = std::max(c1.lo, c2.lo);
        const double hi = std::min(c1.hi, c2.hi);
        if (lo <= hi) out.no_retx_set = {lo, hi};
    }

    // Pointwise case over [0,1]: cond1 only -> s2 retx, cond2 only -> s11
    // retx, neither -> both, both -> none. The two sets are one-sided
    // intervals, so cutting at their boundaries yields the full partition.
    std::vector<double> cuts = {0.0, 1.0};
    if (!c1.empty() && c1.hi > 0.0 && c1.hi < 1.0) cuts.push_back(c1.hi);
    if (!c2.empty() && c2.lo > 0.0 && c2.lo < 1.0) cuts.push_back(c2.lo);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto label = [&](double a) {
        const bool in1 = c1.contains(a);
        const bool in2 = c2.contains(a);
        if (in1 && in2) return RetxCase::NoRetx;
        if (in1) return RetxCase::S2Only;
        if (in2) return RetxCase::S11Only;
        return RetxCase::Both;
    };

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        AlphaRegion r;
        r.lo = cuts[i];
        r.hi = cuts[i + 1];
        r.kind = label(0.5 * (r.lo + r.hi));
        if (!out.regions.empty() && out.regions.back().kind == r.kind) {
            out.regions.back().hi = r.hi;
        } else {
            out.regions.push_back(r);
        }
    }
    if (out.regions.empty()) out.regions.push_back({0.0, 1.0, label(0.5)});

    if (!out.no_retx_set.empty()) {
        out.case_id = RetxCase::NoRetx;
    } else if (out.regions.size() == 1) {
        out.case_id = out.regions.front().kind;
    } else {
        out.case_id = RetxCase::Both;  // mixed partition: both streams in play
    }
    return out;
}

bool special_alpha1_applies(const ChannelDraw& draw, double r1, double r2) {
    return cond_user1(draw, 1.0, r1) && !cond_user2(draw, 1.0, r2);
}

bool special_alpha0_applies(const ChannelDraw& draw, double r1, double r2) {
    return cond_user2(draw, 0.0, r2) && !cond_user1(draw, 0.0, r1);
}

}  // namespace rsmaharq
