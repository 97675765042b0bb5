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
#include <cstdio>
#include <fstream>

#include "sweep.hpp"

using namespace rsmaharq;

namespace {

SweepSpec small_spec() {
    SweepSpec spec;
    spec.schemes = {Scheme::RSMA, Scheme::NOMA, Scheme::FDMA};
    spec.kinds = {HarqKind::CC};
    spec.l_values = {2};
    spec.rate_start = 1.0;
    spec.rate_stop = 2.0;
    spec.rate_step = 0.5;
    spec.trials = 2000;
    spec.seed = 11;
    return spec;
}

}  // namespace

TEST_CASE("rate grid construction") {
    SweepSpec spec = small_spec();
    const auto rates = spec.rates();
    REQUIRE(rates.size() == 3);
    CHECK(rates[0] == doctest::Approx(1.0));
    CHECK(rates[2] == doctest::Approx(2.0));
    spec.rate_start = spec.rate_stop = 2.5;
    spec.rate_step = 0.25;
    CHECK(spec.rates().size() == 1);
}

TEST_CASE("zero rate: no errors, unit power per packet") {
    SweepSpec spec = small_spec();
    spec.rate_start = spec.rate_stop = 0.0;
    spec.rate_step = 1.0;
    spec.trials = 500;
    const SweepResult res = run_sweep(spec);
    REQUIRE(res.records.size() == 6);
    for (const SweepRecord& r : res.records) {
        CHECK(r.error_prob == 0.0);
        CHECK(r.avg_power_per_packet == doctest::Approx(1.0));
    }
}

TEST_CASE("CSV: header-only for empty records, round trip, determinism") {
    CHECK(to_csv({}) ==
          "scheme,kind,L,rate,user,error_prob,ci95_halfwidth,avg_power_per_packet,"
          "trials,seed,fdma_w1,mean_chosen_alpha\n");

    SweepSpec spec = small_spec();
    spec.trials = 300;
    const SweepResult res = run_sweep(spec);
    const std::string csv = to_csv(res.records);
    const std::string csv2 = to_csv(parse_csv(csv));
    CHECK(csv == csv2);

    // Optional columns filled exactly for their schemes.
    for (const SweepRecord& r : res.records) {
        CHECK(r.has_fdma_w1 == (r.scheme == Scheme::FDMA));
        CHECK(r.has_mean_alpha == (r.scheme == Scheme::RSMA));
    }
}

TEST_CASE("sweep output is independent of the worker count") {
    SweepSpec spec = small_spec();
    spec.trials = 3000;
    spec.threads = 1;
    const std::string csv1 = to_csv(run_sweep(spec).records);
    spec.threads = 4;
    const std::string csv4 = to_csv(run_sweep(spec).records);
    CHECK(csv1 == csv4);
}

TEST_CASE("write_csv writes the same bytes to disk") {
    SweepSpec spec = small_spec();
    spec.trials = 200;
    spec.schemes = {Scheme::NOMA};
    const SweepResult res = run_sweep(spec);
    const std::string path = "test_sweep_out.csv";
    write_csv(res.records, path);
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(bytes == to_csv(res.records));
    std::remove(path.c_str());
    CHECK_THROWS(write_csv(res.records, "des-not-exist-dir/x.csv"));
}

TEST_CASE("spec parsing: keys, lists, errors") {
    SweepSpec spec;
    std::string err;
    CHECK(sweep_spec_set(spec, "schemes", "NOMA,FDMA", err));
    REQUIRE(spec.schemes.size() == 2);
    CHECK(spec.schemes[0] == Scheme::NOMA);
    CHECK(sweep_spec_set(spec, "harq", "IR", err));
    CHECK(spec.kinds == std::vector<HarqKind>{HarqKind::IR});
    CHECK(sweep_spec_set(spec, "kinds", "CC,IR", err));
    CHECK(spec.kinds.size() == 2);
    CHECK(sweep_spec_set(spec, "retx", "2,4", err));
    CHECK(spec.l_values == std::vector<int>{2, 4});
    CHECK(sweep_spec_set(spec, "gamma1_db", "18.5", err));
    CHECK(spec.gamma1_db == 18.5);
    CHECK(sweep_spec_set(spec, "trials", "12345", err));
    CHECK(spec.trials == 12345);

    CHECK_FALSE(sweep_spec_set(spec, "schemes", "OFDMA", err));
    CHECK(err.find("schemes") != std::string::npos);
    CHECK_FALSE(sweep_spec_set(spec, "trials", "many", err));
    CHECK(err.find("trials") != std::string::npos);
    CHECK_FALSE(sweep_spec_set(spec, "bogus_key", "1", err));
    CHECK(err.find("bogus_key") != std::string::npos);
}

TEST_CASE("spec validation reports the offending field") {
    SweepSpec spec = small_spec();
    spec.rate_step = 0.0;
    CHECK(sweep_spec_problem(spec).find("rate_step") != std::string::npos);
    spec = small_spec();
    spec.trials = 0;
    CHECK(sweep_spec_problem(spec).find("trials") != std::string::npos);
    spec = small_spec();
    spec.l_values = {-1};
    CHECK(!sweep_spec_problem(spec).empty());
    CHECK(sweep_spec_problem(small_spec()).empty());
}

TEST_CASE("config file loading with overrides and comments") {
    const std::string path = "test_sweep_cfg.txt";
    {
        std::ofstream f(path);
        f << "# experiment configuration\n";
        f << "schemes = RSMA,FDMA\n";
        f << "kinds = IR\n";
        f << "L_values = 4\n";
        f << "rate_start = 2.0   # inline comment\n";
        f << "rate_stop = 3.0\n";
        f << "rate_step = 0.5\n";
        f << "trials = 777\n";
        f << "seed = 9\n";
    }
    SweepSpec spec;
    std::string err;
    REQUIRE(sweep_spec_load_file(spec, path, err));
    CHECK(spec.schemes.size() == 2);
    CHECK(spec.kinds == std::vector<HarqKind>{HarqKind::IR});
    CHECK(spec.l_values == std::vector<int>{4});
    CHECK(spec.trials == 777);
    std::remove(path.c_str());

    CHECK_FALSE(sweep_spec_load_file(spec, "no_such_file.cfg", err));
    CHECK(err.find("no_such_file") != std::string::npos);
}

TEST_CASE("Wilson interval covers a known truth often enough") {
    // FDMA, L = 0, CC has a closed-form error probability; the reported 95%
    // interval must contain it in at least 90 of 100 seeded runs.
    SweepSpec spec;
    spec.schemes = {Scheme::FDMA};
    spec.kinds = {HarqKind::CC};
    spec.l_values = {0};
    spec.rate_start = spec.rate_stop = 2.0;
    spec.rate_step = 1.0;
    spec.trials = 10000;
    int covered = 0, total = 0;
    for (int run = 0; run < 100; ++run) {
        spec.seed = 500 + run;
        const SweepResult res = run_sweep(spec);
        REQUIRE(res.records.size() == 2);
        const double w1 = res.records[0].fdma_w1;
        const double w[2] = {w1, 1.0 - w1};
        const double gamma[2] = {db_to_linear(20.0), db_to_linear(15.0)};
        for (int k = 0; k < 2; ++k) {
            const double truth =
                1.0 - std::exp(-w[k] * (std::exp2(2.0 / w[k]) - 1.0) / gamma[k]);
            const SweepRecord& r = res.records[k];
            const double center = wilson_center(
                static_cast<std::uint64_t>(std::llround(r.error_prob * spec.trials)),
                spec.trials);
            total += 1;
            if (std::abs(truth - center) <= r.ci95_halfwidth) ++covered;
        }
    }
    CHECK(covered >= total * 9 / 10);
}

TEST_CASE("validate: small grid passes") {
    const ValidationReport rep = run_validate(24, 2026, 100000);
    CHECK(rep.points == 24);
    CHECK(rep.max_rel_err <= 1e-6);
    CHECK(rep.z_failures == 0);
    CHECK(rep.nonconverged == 0);
    CHECK(rep.passed);
    CHECK(rep.text.find("summary:") != std::string::npos);
}
