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

#include <algorithm>
#include <cmath>
#include <vector>

#include "channel.hpp"

using namespace rsmaharq;

TEST_CASE("db conversions") {
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(db_to_linear(20.0) == 100.0);
    CHECK(db_to_linear(15.0) == doctest::Approx(31.6228).epsilon(1e-4));
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
}

TEST_CASE("exponential sample mean and median") {
    const UserProfile p{20.0, 1.0};  // mean gain 100
    const RngStream rng(42, 0);
    const std::uint64_t n = 1000000;
    double sum = 0.0;
    std::uint64_t below_median = 0;
    const double median = 100.0 * std::log(2.0);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double x = sample_gain(p, rng, i, 1);
        sum += x;
        if (x < median) ++below_median;
    }
    // Law of large numbers: sigma_mean = Gamma/sqrt(n), assert 3 sigma.
    CHECK(sum / n == doctest::Approx(100.0).epsilon(0.003));
    // Median of the exponential is Gamma ln 2; 3 binomial sigma = 0.0015.
    CHECK(static_cast<double>(below_median) / n == doctest::Approx(0.5).epsilon(0.003));
}

TEST_CASE("per-round draws are uncorrelated across users") {
    const UserProfile p1{20.0, 1.0}, p2{15.0, 1.0};
    const RngStream rng(7, 3);
    const std::uint64_t n = 1000000;
    double s1 = 0, s2 = 0, s11 = 0, s22 = 0, s12 = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const ChannelDraw d = rng.draw_round(p1, p2, i);
        s1 += d.g1;
        s2 += d.g2;
        s11 += d.g1 * d.g1;
        s22 += d.g2 * d.g2;
        s12 += d.g1 * d.g2;
    }
    const double m1 = s1 / n, m2 = s2 / n;
    const double cov = s12 / n - m1 * m2;
    const double corr = cov / std::sqrt((s11 / n - m1 * m1) * (s22 / n - m2 * m2));
    CHECK(std::abs(corr) < 0.003);  // ~N(0, 1/sqrt(n))
}

TEST_CASE("determinism and stream separation") {
    const UserProfile p1{20.0, 1.0}, p2{15.0, 1.0};
    const RngStream a(123, 5), b(123, 5), c(123, 6);
    bool all_equal = true, any_differ = false;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const ChannelDraw da = a.draw_round(p1, p2, i);
        const ChannelDraw db = b.draw_round(p1, p2, i);
        const ChannelDraw dc = c.draw_round(p1, p2, i);
        all_equal = all_equal && da.g1 == db.g1 && da.g2 == db.g2;
        any_differ = any_differ || da.g1 != dc.g1;
    }
    CHECK(all_equal);
    CHECK(any_differ);
}

TEST_CASE("draws are a pure function of indices, not call order") {
    const UserProfile p1{20.0, 1.0}, p2{15.0, 1.0};
    const RngStream rng(99, 1);
    std::vector<double> forward, backward;
    for (std::uint64_t i = 0; i < 256; ++i) forward.push_back(rng.draw_round(p1, p2, i).g1);
    for (std::uint64_t i = 256; i-- > 0;) backward.push_back(rng.draw_round(p1, p2, i).g1);
    std::reverse(backward.begin(), backward.end());
    CHECK(forward == backward);
}

TEST_CASE("Kolmogorov-Smirnov against the exponential CDF") {
    // One-sample KS on 1e5 draws; the 1% critical value is ~1.63/sqrt(n).
    // Require at least 38 of 40 independent streams below it.
    const double gamma = db_to_linear(15.0);
    const std::uint64_t n = 100000;
    const double crit = 1.63 / std::sqrt(static_cast<double>(n));
    int ok = 0;
    std::vector<double> xs(n);
    for (int run = 0; run < 100; ++run) {
        const RngStream rng(1000 + run, run);
        for (std::uint64_t i = 0; i < n; ++i) xs[i] = rng.exponential(gamma, i, 0);
        std::sort(xs.begin(), xs.end());
        double d = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) {
            const double cdf = 1.0 - std::exp(-xs[i] / gamma);
            d = std::max(d, std::abs(cdf - (i + 1.0) / n));
            d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
        }
        if (d < crit) ++ok;
    }
    CHECK(ok >= 95);
}

TEST_CASE("degenerate mean") {
    const RngStream rng(5, 0);
    CHECK(rng.exponential(0.0, 0, 0) == 0.0);
    CHECK_THROWS(rng.exponential(-1.0, 0, 0));
}
