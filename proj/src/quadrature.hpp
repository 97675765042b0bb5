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

#include <cstdint>
#include <functional>

#include "analytic.hpp"

namespace rsmaharq {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

/// Adaptive Simpson integration of f over [lo, hi].
QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo,
                              double hi, double abs_tol, double rel_tol);

/// Numerical evaluation of the three both-retransmit failure events, by
/// nested integration over the exact region decomposition: the inner
/// exponential integral is closed-form, the outer dimension is integrated
/// adaptively. Independent of the closed forms in analytic.cpp by
/// construction (only the event definitions are shared).
QuadResult quad_term1(double a1, double b1, double alpha, double G1, double G2,
                      double abs_tol = 1e-11, double rel_tol = 1e-9);
QuadResult quad_term2(double b1, double a2, double alpha, double G1, double G2,
                      double abs_tol = 1e-11, double rel_tol = 1e-9);
QuadResult quad_term3(double a1, double b2, double alpha, double G1, double G2,
                      double abs_tol = 1e-11, double rel_tol = 1e-9);

struct OracleResult {
    ErrorPair value;
    double error_estimate = 0.0;
    bool converged = true;
};

/// Oracle for p_joint: p11 = t1+t2+t3, p2 = t1+t3.
OracleResult oracle_joint(double a1, double b1, double a2, double b2, double alpha,
                          double G1, double G2, double abs_tol = 1e-11,
                          double rel_tol = 1e-9);
OracleResult oracle_joint(const ThresholdSet& ts, double G1, double G2, double alpha,
                          double abs_tol = 1e-11, double rel_tol = 1e-9);

/// Oracle for p_special: p1 = t1+t2, p2 = t1+t3 at alpha = 1.
OracleResult oracle_special(const SpecialThresholds& st, double G1, double G2,
                            double abs_tol = 1e-11, double rel_tol = 1e-9);

/// Monte Carlo event counting on the same literal events, with paired
/// exponential draws: a = {alpha X >= a1 (1+Y)}, b = {Y >= b1 (1+alpha X)},
/// c1 = !a&&!b, c2 = b && alpha X < a2, c3 = a && Y < b2. The three events
/// are disjoint whenever a2 <= a1 and b2 <= b1, which always holds for
/// thresholds produced by joint_thresholds.
struct McPair {
    std::uint64_t n = 0;
    std::uint64_t c1 = 0;
    std::uint64_t c2 = 0;
    std::uint64_t c3 = 0;
    std::uint64_t hits11() const { return c1 + c2 + c3; }
    std::uint64_t hits2() const { return c1 + c3; }
    std::uint64_t hits1_special() const { return c1 + c2; }
    double p11() const { return static_cast<double>(hits11()) / static_cast<double>(n); }
    double p2() const { return static_cast<double>(hits2()) / static_cast<double>(n); }
    double p1_special() const { return static_cast<double>(hits1_special()) / static_cast<double>(n); }
};

McPair mc_joint_events(double a1, double b1, double a2, double b2, double alpha,
                       double G1, double G2, std::uint64_t n, std::uint64_t seed,
                       std::uint64_t point_id);

/// z-score of an observed proportion against a model probability.
double binomial_z(std::uint64_t hits, std::uint64_t n, double p_model);

}  // namespace rsmaharq
