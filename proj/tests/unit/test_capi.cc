// Copyright 2026 The hopqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "hopqec/hopqec.h"

namespace {

std::string temp_path(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / "hopqec_capi_test";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
    EXPECT_STRNE(hopqec_version(), "");
    EXPECT_STREQ(hopqec_status_name(HOPQEC_OK), "ok");
    EXPECT_STREQ(hopqec_status_name(HOPQEC_ERR_NO_FINITE_DISTANCE), "no-finite-distance");
}

TEST(CApi, ErrorsCarryCodeAndMessage) {
    hopqec_channel *ch = nullptr;
    EXPECT_EQ(hopqec_channel_extract(0.01, 4, &ch), HOPQEC_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(ch, nullptr);
    EXPECT_NE(std::string(hopqec_last_error()).find("arity"), std::string::npos);
    EXPECT_EQ(hopqec_channel_load("/nonexistent/file", &ch), HOPQEC_ERR_IO);
    EXPECT_EQ(hopqec_circuit_build(HOPQEC_SCHEDULE_STD, 4, 1, 0, 0, nullptr, nullptr, nullptr),
              HOPQEC_ERR_INVALID_ARGUMENT);
    hopqec_circuit *c = nullptr;
    EXPECT_EQ(hopqec_circuit_build(HOPQEC_SCHEDULE_HOP, 3, 1, 0, 0, nullptr, nullptr, &c), HOPQEC_ERR_INVALID_ARGUMENT);
    // Free functions accept NULL.
    hopqec_channel_free(nullptr);
    hopqec_circuit_free(nullptr);
    hopqec_table_free(nullptr);
}

TEST(CApi, ChannelCompileCircuitDecode) {
    hopqec_channel *c5 = nullptr, *c3 = nullptr;
    ASSERT_EQ(hopqec_channel_extract(0.01, 5, &c5), HOPQEC_OK);
    ASSERT_EQ(hopqec_channel_extract(0.01, 3, &c3), HOPQEC_OK);
    EXPECT_EQ(hopqec_channel_arity(c5), 5);
    EXPECT_NEAR(hopqec_channel_total(c5), 1.0, 1e-9);
    EXPECT_GT(hopqec_channel_lambda(c5), 0.0);
    EXPECT_LT(hopqec_channel_fidelity(c5), 1.0);

    // The extracted channel has negative second-order shifts: abort unless clamping.
    hopqec_compiled *bad = nullptr;
    EXPECT_EQ(hopqec_compile(c5, 2, 0, &bad), HOPQEC_ERR_COMPILE);
    hopqec_compiled *k5 = nullptr, *k3 = nullptr;
    ASSERT_EQ(hopqec_compile(c5, 2, 1, &k5), HOPQEC_OK);
    ASSERT_EQ(hopqec_compile(c3, 2, 1, &k3), HOPQEC_OK);
    EXPECT_LT(hopqec_compiled_clamped_mass(k5), 0.0);
    double err = 1;
    ASSERT_EQ(hopqec_compiled_max_error(k5, c5, &err), HOPQEC_OK);
    EXPECT_LT(err, 1e-4);

    std::string path = temp_path("hop5.compiled");
    ASSERT_EQ(hopqec_compiled_save(k5, path.c_str()), HOPQEC_OK);
    hopqec_compiled *back = nullptr;
    ASSERT_EQ(hopqec_compiled_load(path.c_str(), &back), HOPQEC_OK);
    EXPECT_EQ(hopqec_compiled_stage_count(back), hopqec_compiled_stage_count(k5));

    hopqec_circuit *circ = nullptr;
    ASSERT_EQ(hopqec_circuit_build(HOPQEC_SCHEDULE_HOP, 3, 3, 0.01, 0, back, k3, &circ), HOPQEC_OK);
    EXPECT_EQ(hopqec_circuit_num_detectors(circ), 32u);
    EXPECT_EQ(hopqec_circuit_num_observables(circ), 2u);
    // Three rounds plus the initial round of nine steps each, then the final data readout.
    EXPECT_EQ(hopqec_circuit_num_layers(circ), 4u * 9u + 1u);
    hopqec_failure_stats st{};
    ASSERT_EQ(hopqec_logical_failure_rate(circ, 4096, 3, 0, &st), HOPQEC_OK);
    EXPECT_EQ(st.shots, 4096u);
    EXPECT_GT(st.failures, 0u);
    EXPECT_DOUBLE_EQ(st.p_l, static_cast<double>(st.failures) / 4096.0);

    std::string cpath = temp_path("c.txt");
    ASSERT_EQ(hopqec_circuit_save(circ, cpath.c_str()), HOPQEC_OK);
    hopqec_circuit *loaded = nullptr;
    ASSERT_EQ(hopqec_circuit_load(cpath.c_str(), &loaded), HOPQEC_OK);
    hopqec_failure_stats st2{};
    ASSERT_EQ(hopqec_logical_failure_rate(loaded, 4096, 3, 0, &st2), HOPQEC_OK);
    EXPECT_EQ(st2.failures, st.failures);
    ASSERT_EQ(hopqec_sample_to_file(loaded, 100, 1, temp_path("s.bin").c_str(), 0), HOPQEC_OK);
    EXPECT_GT(std::filesystem::file_size(temp_path("s.bin")), 24u);

    hopqec_circuit_free(loaded);
    hopqec_circuit_free(circ);
    hopqec_compiled_free(back);
    hopqec_compiled_free(k5);
    hopqec_compiled_free(k3);
    hopqec_channel_free(c5);
    hopqec_channel_free(c3);
}

TEST(CApi, StandardCircuitWithoutNoiseNeverFails) {
    hopqec_circuit *c = nullptr;
    ASSERT_EQ(hopqec_circuit_build(HOPQEC_SCHEDULE_STD, 5, 5, 0, 0, nullptr, nullptr, &c), HOPQEC_OK);
    hopqec_failure_stats st{};
    ASSERT_EQ(hopqec_logical_failure_rate(c, 2048, 1, 0, &st), HOPQEC_OK);
    EXPECT_EQ(st.failures, 0u);
    hopqec_circuit_free(c);
}

TEST(CApi, ConfidenceInterval) {
    double lo = -1, hi = -1;
    ASSERT_EQ(hopqec_confidence_interval(100, 10000, 0.999, &lo, &hi), HOPQEC_OK);
    EXPECT_LT(lo, 0.01);
    EXPECT_GT(hi, 0.01);
    EXPECT_EQ(hopqec_confidence_interval(1, 0, 0.999, &lo, &hi), HOPQEC_ERR_INVALID_ARGUMENT);
}

TEST(CApi, CampaignThresholdFitResources) {
    hopqec_campaign_config *cfg = nullptr;
    EXPECT_EQ(hopqec_campaign_config_parse("{\"distances\": [4], \"p1_grid\": [0]}", &cfg),
              HOPQEC_ERR_INVALID_ARGUMENT);
    ASSERT_EQ(hopqec_campaign_config_parse(
                  "{\"schedule\": \"std\", \"distances\": [3, 5], \"p1_grid\": [0, 1e-3], \"max_shots\": 2048, "
                  "\"threads\": 1}",
                  &cfg),
              HOPQEC_OK);
    ASSERT_EQ(hopqec_campaign_config_schedule_count(cfg), 1u);
    EXPECT_EQ(hopqec_campaign_config_schedule(cfg, 0), HOPQEC_SCHEDULE_STD);
    int calls = 0;
    hopqec_table *t = nullptr;
    ASSERT_EQ(hopqec_campaign_run(
                  cfg, [](const hopqec_row *, void *user) { ++*static_cast<int *>(user); }, &calls, &t),
              HOPQEC_OK);
    EXPECT_EQ(calls, 4);
    ASSERT_EQ(hopqec_table_size(t), 4u);
    hopqec_row row{};
    ASSERT_EQ(hopqec_table_row(t, 0, &row), HOPQEC_OK);
    EXPECT_EQ(row.d, 3);
    EXPECT_EQ(row.p1, 0.0);
    EXPECT_EQ(row.failures, 0u);
    EXPECT_EQ(hopqec_table_row(t, 9, &row), HOPQEC_ERR_INVALID_ARGUMENT);

    std::string csv = temp_path("campaign.csv");
    ASSERT_EQ(hopqec_table_write_csv(t, cfg, csv.c_str()), HOPQEC_OK);
    hopqec_table *back = nullptr;
    ASSERT_EQ(hopqec_table_load_csv(csv.c_str(), &back), HOPQEC_OK);
    EXPECT_EQ(hopqec_table_size(back), 4u);
    // A single nonzero p1 cannot bracket a crossing.
    hopqec_threshold_result th{};
    EXPECT_EQ(hopqec_threshold(back, HOPQEC_SCHEDULE_STD, &th), HOPQEC_ERR_THRESHOLD_UNDETERMINED);
    hopqec_fits *fits = nullptr;
    EXPECT_EQ(hopqec_fit(back, HOPQEC_SCHEDULE_STD, 1.0, &fits), HOPQEC_ERR_INVALID_ARGUMENT);

    ASSERT_EQ(hopqec_fits_from_meta(0.53, -0.71, 1.56, -3.11, &fits), HOPQEC_OK);
    hopqec_resource_estimate est{};
    ASSERT_EQ(hopqec_resources(fits, 7e-4, 1e-10, HOPQEC_SCHEDULE_HOP, &est), HOPQEC_OK);
    EXPECT_EQ(est.required_d, 83);
    EXPECT_EQ(est.physical_qubits, 2LL * 83 * 83 - 1);
    EXPECT_EQ(est.spacetime_volume, est.physical_qubits * 9 * 83);
    std::string fpath = temp_path("fits.csv");
    ASSERT_EQ(hopqec_fits_save(fits, fpath.c_str()), HOPQEC_OK);
    hopqec_fits *loaded = nullptr;
    ASSERT_EQ(hopqec_fits_load(fpath.c_str(), &loaded), HOPQEC_OK);
    double ms = 0, mi = 0, cs = 0, ci = 0;
    hopqec_fits_meta(loaded, &ms, &mi, &cs, &ci);
    EXPECT_DOUBLE_EQ(ms, 0.53);
    EXPECT_DOUBLE_EQ(ci, -3.11);

    hopqec_fits *std_fits = nullptr;
    ASSERT_EQ(hopqec_fits_from_meta(0.56, -0.406, 1.77, -2.73, &std_fits), HOPQEC_OK);
    EXPECT_EQ(hopqec_resources(std_fits, 7e-4, 1e-10, HOPQEC_SCHEDULE_STD, &est), HOPQEC_ERR_NO_FINITE_DISTANCE);

    hopqec_fits_free(std_fits);
    hopqec_fits_free(loaded);
    hopqec_fits_free(fits);
    hopqec_table_free(back);
    hopqec_table_free(t);
    hopqec_campaign_config_free(cfg);
}

TEST(CApi, CouplingsWithBuiltinParameters) {
    hopqec_couplings *c = nullptr;
    // Two excitations keep this fast; strict labeling succeeds at this cap.
    ASSERT_EQ(hopqec_couplings_compute(nullptr, 2, 0, &c), HOPQEC_OK);
    ASSERT_EQ(hopqec_couplings_count(c), 10u);
    int j = -1, k = -1;
    double zeta = 0, overlap = 0;
    ASSERT_EQ(hopqec_couplings_pair(c, 0, &j, &k, &zeta, &overlap), HOPQEC_OK);
    EXPECT_EQ(j, 0);
    EXPECT_EQ(k, 1);
    EXPECT_GT(overlap, 0.0);
    std::string csv = temp_path("couplings.csv");
    ASSERT_EQ(hopqec_couplings_write_csv(c, csv.c_str()), HOPQEC_OK);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "pair,zeta_over_2pi_MHz,label_overlap_min");
    hopqec_couplings_free(c);
}
