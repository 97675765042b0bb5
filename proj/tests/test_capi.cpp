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

// Exercises the shared library strictly through its public C header.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "rsma_harq.h"

namespace {

struct Spec {
    rsma_harq_spec* s = rsma_harq_spec_create();
    ~Spec() { rsma_harq_spec_destroy(s); }
};

void set_small(rsma_harq_spec* s) {
    REQUIRE(rsma_harq_spec_set(s, "schemes", "RSMA,FDMA") == RSMA_HARQ_OK);
    REQUIRE(rsma_harq_spec_set(s, "harq", "CC") == RSMA_HARQ_OK);
    REQUIRE(rsma_harq_spec_set(s, "retx", "2") == RSMA_HARQ_OK);
    REQUIRE(rsma_harq_spec_set(s, "rate_start", "1.5") == RSMA_HARQ_OK);
    REQUIRE(rsma_harq_spec_set(s, "rate_stop", "2.0") == RSMA_HARQ_OK);
    REQUIRE(rsma_harq_spec_set(s, "rate_step", "0.5") == RSMA_HARQ_OK);
    REQUIRE(rsma_harq_spec_set(s, "trials", "500") == RSMA_HARQ_OK);
    REQUIRE(rsma_harq_spec_set(s, "seed", "4") == RSMA_HARQ_OK);
}

}  // namespace

TEST_CASE("version string") {
    CHECK(std::strcmp(rsma_harq_version(), RSMA_HARQ_VERSION_STRING) == 0);
}

TEST_CASE("spec errors carry messages") {
    Spec h;
    CHECK(rsma_harq_spec_set(h.s, "schemes", "XYZ") == RSMA_HARQ_ERR_INVALID_ARG);
    CHECK(std::strstr(rsma_harq_last_error(), "schemes") != nullptr);
    CHECK(rsma_harq_spec_set(nullptr, "schemes", "RSMA") == RSMA_HARQ_ERR_INVALID_ARG);
    CHECK(rsma_harq_spec_load_file(h.s, "missing.cfg") == RSMA_HARQ_ERR_IO);
}

TEST_CASE("sweep through the C interface") {
    Spec h;
    set_small(h.s);
    rsma_harq_records* rec = nullptr;
    REQUIRE(rsma_harq_run_sweep(h.s, &rec) == RSMA_HARQ_OK);
    REQUIRE(rec != nullptr);
    // 2 schemes x 1 kind x 1 L x 2 rates x 2 users.
    CHECK(rsma_harq_records_count(rec) == 8);

    rsma_harq_record_view v;
    REQUIRE(rsma_harq_records_get(rec, 0, &v) == RSMA_HARQ_OK);
    CHECK(std::strcmp(v.scheme, "RSMA") == 0);
    CHECK(std::strcmp(v.kind, "CC") == 0);
    CHECK(v.l == 2);
    CHECK(v.rate == doctest::Approx(1.5));
    CHECK(v.user == 1);
    CHECK(v.trials == 500);
    CHECK(v.has_mean_chosen_alpha == 1);
    CHECK(v.has_fdma_w1 == 0);
    CHECK(rsma_harq_records_get(rec, 99, &v) == RSMA_HARQ_ERR_INVALID_ARG);

    const char* csv = rsma_harq_records_csv(rec);
    REQUIRE(csv != nullptr);
    const std::string csv_str(csv);
    CHECK(csv_str.rfind("scheme,kind,L,rate,user,", 0) == 0);

    const char* path = "capi_out.csv";
    REQUIRE(rsma_harq_records_write_csv(rec, path) == RSMA_HARQ_OK);
    std::ifstream in(path, std::ios::binary);
    const std::string bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    CHECK(bytes == csv_str);
    std::remove(path);
    CHECK(rsma_harq_records_write_csv(rec, "nope/x.csv") == RSMA_HARQ_ERR_IO);

    rsma_harq_records_destroy(rec);
}

TEST_CASE("config errors surface as status codes") {
    Spec h;
    set_small(h.s);
    REQUIRE(rsma_harq_spec_set(h.s, "rate_step", "0") == RSMA_HARQ_OK);  // parses…
    rsma_harq_records* rec = nullptr;
    CHECK(rsma_harq_run_sweep(h.s, &rec) == RSMA_HARQ_ERR_INVALID_ARG);  // …but fails validation
    CHECK(rec == nullptr);
    CHECK(std::strstr(rsma_harq_last_error(), "rate_step") != nullptr);
}

TEST_CASE("validation through the C interface") {
    rsma_harq_validation* v = nullptr;
    REQUIRE(rsma_harq_validate(12, 7, 50000, 0, &v) == RSMA_HARQ_OK);
    REQUIRE(v != nullptr);
    CHECK(rsma_harq_validation_passed(v) == 1);
    CHECK(rsma_harq_validation_max_rel_err(v) <= 1e-6);
    CHECK(rsma_harq_validation_max_abs_z(v) <= 4.0);
    CHECK(std::strstr(rsma_harq_validation_report(v), "summary:") != nullptr);
    rsma_harq_validation_destroy(v);
    CHECK(rsma_harq_validate(0, 1, 0, 0, &v) == RSMA_HARQ_ERR_INVALID_ARG);
}
