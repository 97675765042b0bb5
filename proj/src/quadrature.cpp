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

#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rsmaharq {

namespace {

struct AsrState {
    const std::function<double(double)>* f;
    double abs_tol;
    double err = 0.0;
    bool converged = true;
};

double asr_recurse(AsrState& st, double lo, double hi, double flo, double fmid,
                   double fhi, double whole, double eps, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double flm = (*st.f)(lmid);
    const double frm = (*st.f)(rmid);
    const double h = hi - lo;
    const double left = h / 12.0 * (flo + 4.0 * flm + fmid);
    const double right = h / 12.0 * (fmid + 4.0 * frm + fhi);
    const double delta = left + right - whole;
    if (depth <= 0) {
        st.converged = false;
        st.err += std::abs(delta);
        return left + right + delta / 15.0;
    }
    if (std::abs(delta) <= 15.0 * eps) {
        st.err += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return asr_recurse(st, lo, mid, flo, flm, fmid, left, 0.5 * eps, depth - 1) +
           asr_recurse(st, mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth - 1);
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo,
                              double hi, double abs_tol, double rel_tol) {
    QuadResult out;
    if (!(hi > lo)) return out;
    AsrState st;
    st.f = &f;
    st.abs_tol = abs_tol;
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo), fmid = f(mid), fhi = f(hi);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    // Seed the relative target with the crude estimate; the absolute floor
    // keeps near-zero integrals from demanding impossible precision.
    const double eps = std::max(abs_tol, rel_tol * std::abs(whole));
    out.value = asr_recurse(st, lo, hi, flo, fmid, fhi, whole, eps, 52);
    out.error_estimate = st.err;
    out.converged = st.converged;
    return out;
}

namespace {

// Truncation point for an exponential outer integral: beyond lo + 48*mean
// the remaining mass is < 1.5e-21 of a bounded integrand.
double exp_cutoff(double lo, double mean) { return lo + 48.0 * mean; }

QuadResult add(const QuadResult& x, const QuadResult& y) {
    QuadResult out;
    out.value = x.value + y.value;
    out.error_estimate = x.error_estimate + y.error_estimate;
    out.converged = x.converged && y.converged;
    return out;
}

}  // namespace

QuadResult quad_term1(double a1, double b1, double alpha, double G1, double G2,
                      double abs_tol, double rel_tol) {
    QuadResult out;
    if (a1 <= 0.0 || b1 <= 0.0) return out;  // event empty
    const double x0 = a1 / alpha;

    // x in [0, x0): the lower y-limit is negative, so y runs from 0.
    const std::function<double(double)> fa = [&](double x) {
        return std::exp(-x / G1) / G1 * (-std::expm1(-b1 * (1.0 + alpha * x) / G2));
    };
    const QuadResult qa = integrate_adaptive(fa, 0.0, std::min(x0, exp_cutoff(0.0, G1)),
                                             abs_tol, rel_tol);

    // x >= x0: y between ax/a1 - 1 and b1(1+ax); empty beyond c if a1*b1 < 1.
    double hi = exp_cutoff(x0, G1);
    if (a1 * b1 < 1.0) {
        const double c = (1.0 + b1) * a1 / (alpha * (1.0 - a1 * b1));
        hi = std::min(hi, c);
    }
    QuadResult qb;
    if (hi > x0) {
        const std::function<double(double)> fb = [&](double x) {
            const double y_lo = alpha * x / a1 - 1.0;
            const double y_hi = b1 * (1.0 + alpha * x);
            if (y_hi <= y_lo) return 0.0;
            return std::exp(-x / G1) / G1 *
                   (std::exp(-y_lo / G2) - std::exp(-y_hi / G2));
        };
        qb = integrate_adaptive(fb, x0, hi, abs_tol, rel_tol);
    }
    return add(qa, qb);
}

QuadResult quad_term2(double b1, double a2, double alpha, double G1, double G2,
                      double abs_tol, double rel_tol) {
    QuadResult out;
    if (a2 <= 0.0) return out;
    const double x_hi = std::min(a2 / alpha, exp_cutoff(0.0, G1));
    const std::function<double(double)> f = [&](double x) {
        const double y_lo = std::max(0.0, b1 * (1.0 + alpha * x));
        return std::exp(-x / G1) / G1 * std::exp(-y_lo / G2);
    };
    return integrate_adaptive(f, 0.0, x_hi, abs_tol, rel_tol);
}

QuadResult quad_term3(double a1, double b2, double alpha, double G1, double G2,
                      double abs_tol, double rel_tol) {
    QuadResult out;
    if (b2 <= 0.0) return out;
    const double y_hi = std::min(b2, exp_cutoff(0.0, G2));
    const std::function<double(double)> f = [&](double y) {
        const double x_lo = std::max(0.0, a1 * (1.0 + y) / alpha);
        return std::exp(-y / G2) / G2 * std::exp(-x_lo / G1);
    };
    return integrate_adaptive(f, 0.0, y_hi, abs_tol, rel_tol);
}

OracleResult oracle_joint(double a1, double b1, double a2, double b2, double alpha,
                          double G1, double G2, double abs_tol, double rel_tol) {
    const QuadResult t1 = quad_term1(a1, b1, alpha, G1, G2, abs_tol, rel_tol);
    const QuadResult t2 = quad_term2(b1, a2, alpha, G1, G2, abs_tol, rel_tol);
    const QuadResult t3 = quad_term3(a1, b2, alpha, G1, G2, abs_tol, rel_tol);
    OracleResult out;
    out.value.p11 = t1.value + t2.value + t3.value;
    out.value.p2 = t1.value + t3.value;
    out.error_estimate = t1.error_estimate + t2.error_estimate + t3.error_estimate;
    out.converged = t1.converged && t2.converged && t3.converged;
    return out;
}

OracleResult oracle_joint(const ThresholdSet& ts, double G1, double G2, double alpha,
                          double abs_tol, double rel_tol) {
    return oracle_joint(ts.g11_1, ts.g2_1, ts.g11_2, ts.g2_2, alpha, G1, G2, abs_tol,
                        rel_tol);
}

OracleResult oracle_special(const SpecialThresholds& st, double G1, double G2,
                            double abs_tol, double rel_tol) {
    const QuadResult t1 = quad_term1(st.gamma1, st.gamma2, 1.0, G1, G2, abs_tol, rel_tol);
    const QuadResult t2 = quad_term2(st.gamma2, st.gamma1, 1.0, G1, G2, abs_tol, rel_tol);
    const QuadResult t3 = quad_term3(st.gamma1, st.gamma2, 1.0, G1, G2, abs_tol, rel_tol);
    OracleResult out;
    out.value.p11 = t1.value + t2.value;  // p1: the stream with no cross dependence
    out.value.p2 = t1.value + t3.value;
    out.error_estimate = t1.error_estimate + t2.error_estimate + t3.error_estimate;
    out.converged = t1.converged && t2.converged && t3.converged;
    return out;
}

McPair mc_joint_events(double a1, double b1, double a2, double b2, double alpha,
                       double G1, double G2, std::uint64_t n, std::uint64_t seed,
                       std::uint64_t point_id) {
    constexpr std::uint64_t kMcDomain = 0x4D434F5241434C45ull;  // "MCORACLE"
    const RngStream rng(seed, point_id, kMcDomain);
    McPair out;
    out.n = n;
    for (std::uint64_t i = 0; i < n; ++i) {
        const RngStream::UniformPair u = rng.pair_uniform01(i);
        const double x = -G1 * std::log(u.u1);
        const double y = -G2 * std::log(u.u2);
        const bool a = alpha * x >= a1 * (1.0 + y);
        const bool b = y >= b1 * (1.0 + alpha * x);
        out.c1 += (!a && !b) ? 1u : 0u;
        out.c2 += (b && alpha * x < a2) ? 1u : 0u;
        out.c3 += (a && y < b2) ? 1u : 0u;
    }
    return out;
}

double binomial_z(std::uint64_t hits, std::uint64_t n, double p_model) {
    const double var = p_model * (1.0 - p_model) / static_cast<double>(n);
    const double phat = static_cast<double>(hits) / static_cast<double>(n);
    if (var <= 0.0) return phat == p_model ? 0.0 : std::numeric_limits<double>::infinity();
    return (phat - p_model) / std::sqrt(var);
}

}  // namespace rsmaharq
