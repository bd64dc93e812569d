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

#ifndef SCSEG_CONFIG_HPP_
#define SCSEG_CONFIG_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>
#include <string_view>

#include "scseg/basis.hpp"

namespace scseg {

enum class Method { kRansac, kSd, kLad, kLsf };

const char* ToString(Method method);
// Accepts "ransac", "sd", "lad", "lsf" (case-insensitive).
Method ParseMethod(std::string_view name);

// Every tunable of the segmentation pipeline. Defaults are the published
// operating point.
struct SegmentationConfig {
  int n_max = 64;          // largest block side
  int n_min = 8;           // smallest block side
  double eps_in = 10.0;    // inlier distortion threshold
  double eps1 = 3.0;       // pure-background standard deviation threshold
  double eps2 = 0.5;       // quadtree inlier-ratio threshold
  int t1 = 10;             // max distinct colors for text on constant background
  double r_min = 50.0;     // min intensity range for text on constant background
  int k = 10;              // basis count
  double lam1 = 10.0;      // sparsity weight
  double lam2 = 4.0;       // total variation weight
  std::array<double, 3> rho = {1.0, 1.0, 1.0};
  int k_max_admm = 50;
  int m_iter = 200;
  double stop_ratio = 0.95;
  int lad_max_iter = 50;
  double lad_tol = 1e-6;
  Method method = Method::kRansac;
  BasisKind basis = BasisKind::kDct;
  std::uint64_t seed = 0;

  // Defaults with the basis count tuned for `method` (6 for LAD, 10 otherwise).
  static SegmentationConfig ForMethod(Method method);

  // Throws ParameterError naming the first violated constraint.
  void Validate() const;
};

// Sets one field from its textual form; keys match the long CLI flag names
// with dashes replaced by underscores (e.g. "eps_in", "rho1", "method").
// Throws ParameterError on unknown keys or malformed values.
void SetConfigValue(SegmentationConfig& cfg, std::string_view key, std::string_view value);

// Reads a plain-text file of `key = value` lines ('#' starts a comment) and
// returns the pairs in file order without interpreting them.
std::vector<std::pair<std::string, std::string>> ParseConfigFile(const std::string& path);

// ParseConfigFile followed by SetConfigValue on every pair.
void ApplyConfigFile(SegmentationConfig& cfg, const std::string& path);

// One `key=value` line per field, in the order accepted by ApplyConfigFile.
std::string FormatConfig(const SegmentationConfig& cfg);

}  // namespace scseg

#endif  // SCSEG_CONFIG_HPP_
