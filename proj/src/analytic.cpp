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

#include "analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rsmaharq {

const char* to_string(HarqKind k) { return k == HarqKind::CC ? "CC" : "IR"; }

double exp_tail(double threshold, double mean) {
    if (mean <= 0.0) throw std::invalid_argument("exp_tail: mean must be > 0");
    if (threshold <= 0.0) return 0.0;
    return -std::expm1(-threshold / mean);
}

double residual_s11_cc(const SinrTriple& sinr, double alpha, double r1) {
    if (alpha <= 0.0) throw std::invalid_argument("residual_s11_cc: alpha must be > 0");
    return (std::exp2(r1) / (1.0 + sinr.s12) - (1.0 + sinr.s11)) / alpha;
}

double residual_s2_cc(const SinrTriple& sinr, double r2) {
    return std::exp2(r2) - 1.0 - sinr.s2;
}

double residual_s11_ir(const SinrTriple& sinr, double alpha, double r1) {
    if (alpha <= 0.0) throw std::invalid_argument("residual_s11_ir: alpha must be > 0");
    return std::exp2(r1) / (alpha * (1.0 + sinr.s11) * (1.0 + sinr.s12)) - 1.0 / alpha;
}

double residual_s2_ir(const SinrTriple& sinr, double r2) {
    return std::exp2(r2) / (1.0 + sinr.s2) - 1.0;
}

ThresholdSet joint_thresholds(const ChannelDraw& draw, double alpha, double r1,
                              double r2, HarqKind kind) {
    if (alpha <= 0.0 || alpha > 1.0) {
        throw std::invalid_argument("joint_thresholds: alpha must be in (0,1]");
    }
    const SinrTriple s = sinr_components(draw, alpha);
    const double k1 = std::exp2(r1);
    const double k2 = std::exp2(r2);
    // Buffered round-0 SINRs that enter the four events: s2 before s11 is
    // cancelled, and s11 after s2 was stripped from the round-0 signal.
    const double s2_raw = draw.g2 / (1.0 + draw.g1);
    const double s11_clean = alpha * draw.g1 / (1.0 + (1.0 - alpha) * draw.g1);

    ThresholdSet ts;
    ts.kind = kind;
    if (kind == HarqKind::CC) {
        ts.g11_1 = k1 / (1.0 + s.s12) - 1.0 - s.s11;
        ts.g2_1 = k2 - 1.0 - s2_raw;
        ts.g11_2 = k1 / (1.0 + s.s12) - 1.0 - s11_clean;
        ts.g2_2 = k2 - 1.0 - s.s2;
    } else {
        ts.g11_1 = k1 / ((1.0 + s.s12) * (1.0 + s.s11)) - 1.0;
        ts.g2_1 = k2 / (1.0 + s2_raw) - 1.0;
        ts.g11_2 = k1 / ((1.0 + s.s12) * (1.0 + s11_clean)) - 1.0;
        ts.g2_2 = k2 / (1.0 + s.s2) - 1.0;
    }
    if (ts.g11_1 > 0.0 && ts.g2_1 > 0.0 && ts.g11_1 * ts.g2_1 < 1.0) {
        ts.c = -(1.0 + ts.g2_1) * ts.g11_1 / (alpha * (ts.g2_1 * ts.g11_1 - 1.0));
        ts.c_defined = true;
    }
    return ts;
}

double joint_term1(double a1, double b1, double alpha, double G1, double G2) {
    if (a1 <= 0.0 || b1 <= 0.0) return 0.0;
    const double beta1 = alpha * G1 / (alpha * G1 + a1 * G2);
    const double beta2 = G2 / (G2 + alpha * b1 * G1);
    double p = 1.0 - beta1 * std::exp(-a1 / (alpha * G1)) - beta2 * std::exp(-b1 / G2);
    if (a1 * b1 < 1.0) {
        // The inner region empties beyond x = c; the tail of the outer
        // integral splits off two correction terms.
        const double c = (1.0 + b1) * a1 / (alpha * (1.0 - a1 * b1));
        const double q1 = 1.0 / G1 + alpha / (a1 * G2);
        const double q2 = 1.0 / G1 + alpha * b1 / G2;
        p -= (1.0 - beta1) * std::exp(1.0 / G2 - c * q1);
        p += beta2 * std::exp(-b1 / G2 - c * q2);
    }
    return p;
}

double joint_term2(double b1, double a2, double alpha, double G1, double G2) {
    if (a2 <= 0.0) return 0.0;
    if (b1 <= 0.0) return -std::expm1(-a2 / (alpha * G1));
    const double beta2 = G2 / (G2 + alpha * b1 * G1);
    return beta2 * std::exp(-b1 / G2) *
           (-std::expm1(-a2 * (b1 / G2 + 1.0 / (alpha * G1))));
}

double joint_term3(double a1, double b2, double alpha, double G1, double G2) {
    if (b2 <= 0.0) return 0.0;
    if (a1 <= 0.0) return -std::expm1(-b2 / G2);
    const double beta1 = alpha * G1 / (alpha * G1 + a1 * G2);
    return beta1 * std::exp(-a1 / (alpha * G1)) *
           (-std::expm1(-b2 * (1.0 / G2 + a1 / (alpha * G1))));
}

namespace {

double checked_probability(double p, const char* what) {
    if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) {
        throw std::runtime_error(std::string(what) + " left [0,1]: " + std::to_string(p));
    }
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace

ErrorPair p_joint(const ThresholdSet& ts, double G1, double G2, double alpha) {
    if (G1 <= 0.0 || G2 <= 0.0) throw std::invalid_argument("p_joint: gains must be > 0");
    if (alpha <= 0.0 || alpha > 1.0) throw std::invalid_argument("p_joint: alpha must be in (0,1]");
    const double t1 = joint_term1(ts.g11_1, ts.g2_1, alpha, G1, G2);
    const double t2 = joint_term2(ts.g2_1, ts.g11_2, alpha, G1, G2);
    const double t3 = joint_term3(ts.g11_1, ts.g2_2, alpha, G1, G2);
    ErrorPair out;
    out.p11 = checked_probability(t1 + t2 + t3, "p_joint.p11");
    out.p2 = checked_probability(t1 + t3, "p_joint.p2");
    return out;
}

SpecialThresholds special_thresholds(const ChannelDraw& draw, double r1, double r2,
                                     SpecialCase which, HarqKind kind) {
    const double k1 = std::exp2(r1);
    const double k2 = std::exp2(r2);
    SpecialThresholds st;
    if (which == SpecialCase::Alpha1) {
        st.gamma1 = k1 - 1.0;
        st.gamma2 = (kind == HarqKind::CC) ? k2 - 1.0 - draw.g2 : k2 / (1.0 + draw.g2) - 1.0;
    } else {
        st.gamma1 = (kind == HarqKind::CC) ? k1 - 1.0 - draw.g1 : k1 / (1.0 + draw.g1) - 1.0;
        st.gamma2 = k2 - 1.0;
    }
    return st;
}

ErrorPair p_special_from(const SpecialThresholds& st, double G1, double G2) {
    if (G1 <= 0.0 || G2 <= 0.0) throw std::invalid_argument("p_special: gains must be > 0");
    const double t1 = joint_term1(st.gamma1, st.gamma2, 1.0, G1, G2);
    const double t2 = joint_term2(st.gamma2, st.gamma1, 1.0, G1, G2);
    const double t3 = joint_term3(st.gamma1, st.gamma2, 1.0, G1, G2);
    ErrorPair out;
    out.p11 = checked_probability(t1 + t2, "p_special.p1");
    out.p2 = checked_probability(t1 + t3, "p_special.p2");
    return out;
}

ErrorPair p_special(const ChannelDraw& draw, double r1, double r2, double G1,
                    double G2, SpecialCase which, HarqKind kind) {
    return p_special_from(special_thresholds(draw, r1, r2, which, kind), G1, G2);
}

}  // namespace rsmaharq
