// Copyright 2026 The scseg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "scseg/config.hpp"

namespace scseg {
namespace {

TEST(Config, DefaultsAreTheDocumentedValues) {
  const SegmentationConfig c;
  EXPECT_EQ(c.n_max, 64);
  EXPECT_EQ(c.n_min, 8);
  EXPECT_EQ(c.eps_in, 10.0);
  EXPECT_EQ(c.eps1, 3.0);
  EXPECT_EQ(c.eps2, 0.5);
  EXPECT_EQ(c.t1, 10);
  EXPECT_EQ(c.r_min, 50.0);
  EXPECT_EQ(c.k, 10);
  EXPECT_EQ(c.lam1, 10.0);
  EXPECT_EQ(c.lam2, 4.0);
  EXPECT_EQ(c.rho, (std::array<double, 3>{1, 1, 1}));
  EXPECT_EQ(c.k_max_admm, 50);
  EXPECT_EQ(c.m_iter, 200);
  EXPECT_EQ(c.stop_ratio, 0.95);
  EXPECT_EQ(c.method, Method::kRansac);
  EXPECT_EQ(c.basis, BasisKind::kDct);
  EXPECT_NO_THROW(c.Validate());
}

TEST(Config, ForMethodPicksBasisCount) {
  EXPECT_EQ(SegmentationConfig::ForMethod(Method::kLad).k, 6);
  EXPECT_EQ(SegmentationConfig::ForMethod(Method::kLsf).k, 10);
  EXPECT_EQ(SegmentationConfig::ForMethod(Method::kSd).k, 10);
  EXPECT_EQ(SegmentationConfig::ForMethod(Method::kSd).method, Method::kSd);
}

TEST(Config, ValidateRejects) {
  auto bad = [](auto edit) {
    SegmentationConfig c;
    edit(c);
    EXPECT_THROW(c.Validate(), ParameterError);
  };
  bad([](SegmentationConfig& c) { c.n_min = 1; });
  bad([](SegmentationConfig& c) { c.n_max = 48; });
  bad([](SegmentationConfig& c) { c.n_max = 24; });
  bad([](SegmentationConfig& c) { c.eps2 = 0.0; });
  bad([](SegmentationConfig& c) { c.eps2 = 1.5; });
  bad([](SegmentationConfig& c) { c.eps_in = -1; });
  bad([](SegmentationConfig& c) { c.k = 65; });
  bad([](SegmentationConfig& c) { c.rho[2] = 0; });
  bad([](SegmentationConfig& c) { c.m_iter = 0; });
  bad([](SegmentationConfig& c) { c.stop_ratio = 0; });
}

TEST(Config, SetValueAndRoundTrip) {
  SegmentationConfig c;
  SetConfigValue(c, "eps-in", "12.5");
  SetConfigValue(c, " method ", "SD");
  SetConfigValue(c, "rho2", "0.5");
  SetConfigValue(c, "admm_iters", "80");
  SetConfigValue(c, "basis", "poly");
  SetConfigValue(c, "seed", "18446744073709551615");
  EXPECT_EQ(c.eps_in, 12.5);
  EXPECT_EQ(c.method, Method::kSd);
  EXPECT_EQ(c.rho[1], 0.5);
  EXPECT_EQ(c.k_max_admm, 80);
  EXPECT_EQ(c.basis, BasisKind::kOrthoPoly);
  EXPECT_EQ(c.seed, 18446744073709551615ULL);
  EXPECT_THROW(SetConfigValue(c, "nope", "1"), ParameterError);
  EXPECT_THROW(SetConfigValue(c, "k", "ten"), ParameterError);
  EXPECT_THROW(SetConfigValue(c, "eps1", "3x"), ParameterError);
  EXPECT_THROW(SetConfigValue(c, "method", "kmeans"), ParameterError);

  const std::string path = (std::filesystem::temp_directory_path() / "scseg_cfg_test.txt").string();
  {
    std::ofstream out(path);
    out << "# comment\n" << FormatConfig(c) << "\n  \n";
  }
  SegmentationConfig d;
  ApplyConfigFile(d, path);
  EXPECT_EQ(FormatConfig(d), FormatConfig(c));
  {
    std::ofstream out(path);
    out << "k 4\n";
  }
  EXPECT_THROW(ApplyConfigFile(d, path), ParameterError);
  EXPECT_THROW(ApplyConfigFile(d, "/nonexistent/cfg"), InputError);
}

}  // namespace
}  // namespace scseg
