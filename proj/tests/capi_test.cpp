/* Copyright 2026 The QEM Bounds Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "qem/qem.h"

namespace {

TEST(CApi, StatusNames) {
  EXPECT_STREQ(qem_status_name(QEM_OK), "Ok");
  EXPECT_STREQ(qem_status_name(QEM_EMPTY_GRID), "EmptyGrid");
  EXPECT_TRUE(qem_status_is_numerical(QEM_NEGATIVE_RADICAND));
  EXPECT_FALSE(qem_status_is_numerical(QEM_PARSE_ERROR));
}

TEST(CApi, DistancesOnHandles) {
  qem_state *zero = nullptr, *one = nullptr, *mixed = nullptr;
  ASSERT_EQ(qem_state_named("zero", 1, &zero), QEM_OK);
  ASSERT_EQ(qem_state_named("one", 1, &one), QEM_OK);
  ASSERT_EQ(qem_state_named("mixed", 1, &mixed), QEM_OK);
  double v = 0.0;
  EXPECT_EQ(qem_trace_distance(zero, one, &v), QEM_OK);
  EXPECT_NEAR(v, 1.0, 1e-12);
  EXPECT_EQ(qem_fidelity(zero, mixed, &v), QEM_OK);
  EXPECT_NEAR(v, 0.5, 1e-12);
  EXPECT_EQ(qem_sub_fidelity(mixed, mixed, &v), QEM_OK);
  EXPECT_NEAR(v, 1.0, 1e-12);
  EXPECT_EQ(qem_relative_entropy(mixed, zero, &v), QEM_OK);
  EXPECT_TRUE(std::isinf(v));
  const double entries[] = {0.5, 0.0, 0.6, 0.0, 0.6, 0.0, 0.5, 0.0};
  qem_state* bad = nullptr;
  EXPECT_EQ(qem_state_from_entries(entries, 2, &bad), QEM_NOT_POSITIVE);
  EXPECT_EQ(bad, nullptr);
  EXPECT_NE(std::string(qem_last_error()), "");
  EXPECT_EQ(qem_trace_distance(zero, nullptr, &v), QEM_INVALID_ARGUMENT);
  qem_state_free(zero);
  qem_state_free(one);
  qem_state_free(mixed);
}

TEST(CApi, ChannelsAndBounds) {
  qem_channel* ch = nullptr;
  ASSERT_EQ(qem_channel_standard("dephasing:0.1", &ch), QEM_OK);
  double bound = 0.0;
  EXPECT_EQ(qem_spread_bound(ch, 1, 1, 0.0, "trace_product", &bound), QEM_OK);
  EXPECT_NEAR(bound, 1.25, 1e-12);
  EXPECT_EQ(qem_spread_bound(ch, 1, 1, 0.0, "magic", &bound), QEM_PARSE_ERROR);
  qem_state *plus = nullptr, *out = nullptr;
  ASSERT_EQ(qem_state_named("plus", 1, &plus), QEM_OK);
  ASSERT_EQ(qem_channel_apply(ch, plus, &out), QEM_OK);
  EXPECT_EQ(qem_state_dim(out), 2u);
  qem_state_free(plus);
  qem_state_free(out);
  qem_channel_free(ch);
  EXPECT_EQ(qem_channel_standard("dephasing:1.5", &ch), QEM_INVALID_RATE);

  const double rates[] = {0.1};
  EXPECT_EQ(qem_layered_bound(1, 1, 1, 0.0, rates, 1, 10, &bound), QEM_OK);
  EXPECT_NEAR(bound, 1.43833, 5e-6);
  uint64_t m = 0;
  EXPECT_EQ(qem_hoeffding_samples(1.25, 0.05, 0.05, &m), QEM_OK);
  EXPECT_EQ(m, 4612u);
  EXPECT_EQ(qem_hoeffding_samples(0.0, 0.05, 0.05, &m), QEM_INVALID_SPREAD);
}

TEST(CApi, ConfigRunAndWrite) {
  qem_config* cfg = nullptr;
  ASSERT_EQ(qem_config_parse(R"({"command": "bound", "noise": "dephasing:0.1"})", &cfg), QEM_OK);
  EXPECT_TRUE(qem_config_has(cfg, "noise"));
  EXPECT_FALSE(qem_config_has(cfg, "seed"));
  EXPECT_EQ(qem_config_set(cfg, "shape", "1,1,1"), QEM_OK);
  EXPECT_EQ(qem_config_set(cfg, "shape.b_max", "0"), QEM_OK);
  EXPECT_EQ(qem_config_set(cfg, "shape.colour", "red"), QEM_UNKNOWN_PARAMETER);
  EXPECT_EQ(qem_config_set_json(cfg, "pairs", R"({"mode": "presets"})"), QEM_OK);
  char* text = nullptr;
  EXPECT_EQ(qem_config_get(cfg, "noise.model", &text), QEM_OK);
  EXPECT_STREQ(text, "dephasing");
  qem_string_free(text);

  qem_result* res = nullptr;
  ASSERT_EQ(qem_run(cfg, &res), QEM_OK);
  EXPECT_STREQ(qem_result_format(res), "json");
  EXPECT_NE(std::string(qem_result_text(res)).find("\"bound_value\": 1.25"), std::string::npos);
  EXPECT_FALSE(qem_result_numerical_flag(res));

  const std::string path = ::testing::TempDir() + "qem_capi_report.json";
  ASSERT_EQ(qem_result_write(res, path.c_str()), QEM_OK);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), qem_result_text(res));
  std::remove(path.c_str());
  EXPECT_EQ(qem_result_write(res, "/nonexistent-dir/report.json"), QEM_IO_ERROR);
  qem_result_free(res);
  qem_config_free(cfg);

  EXPECT_EQ(qem_config_parse("{", &cfg), QEM_PARSE_ERROR);
}

TEST(CApi, Sweep) {
  qem_config* cfg = nullptr;
  ASSERT_EQ(qem_config_new(&cfg), QEM_OK);
  ASSERT_EQ(qem_config_set(cfg, "sweep.target", "layered"), QEM_OK);
  ASSERT_EQ(qem_config_set(cfg, "sweep.parameter", "L"), QEM_OK);
  qem_result* res = nullptr;
  EXPECT_EQ(qem_sweep(cfg, &res), QEM_EMPTY_GRID);
  ASSERT_EQ(qem_config_set(cfg, "sweep.grid", "1:3"), QEM_OK);
  ASSERT_EQ(qem_sweep(cfg, &res), QEM_OK);
  EXPECT_STREQ(qem_result_format(res), "csv");
  const std::string text = qem_result_text(res);
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  EXPECT_EQ(lines, 5u);
  qem_result_free(res);
  qem_config_free(cfg);
}

}  // namespace
