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

#include "scseg/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

namespace scseg {

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ParameterError("config: bad value '" + std::string(value) + "' for " +
                         std::string(key));
  }
  return out;
}

// from_chars for double is not in every libstdc++ we target; strtod is.
template <>
double ParseNumber<double>(std::string_view key, std::string_view value) {
  const std::string s(value);
  char* end = nullptr;
  const double out = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ParameterError("config: bad value '" + s + "' for " + std::string(key));
  }
  return out;
}

}  // namespace

const char* ToString(Method method) {
  switch (method) {
    case Method::kRansac:
      return "ransac";
    case Method::kSd:
      return "sd";
    case Method::kLad:
      return "lad";
    case Method::kLsf:
      return "lsf";
  }
  return "?";
}

Method ParseMethod(std::string_view name) {
  const std::string s = Lower(name);
  if (s == "ransac") return Method::kRansac;
  if (s == "sd") return Method::kSd;
  if (s == "lad") return Method::kLad;
  if (s == "lsf") return Method::kLsf;
  throw ParameterError("unknown method '" + std::string(name) + "'");
}

SegmentationConfig SegmentationConfig::ForMethod(Method method) {
  SegmentationConfig cfg;
  cfg.method = method;
  cfg.k = method == Method::kLad ? 6 : 10;
  return cfg;
}

void SegmentationConfig::Validate() const {
  auto fail = [](const std::string& msg) { throw ParameterError("config: " + msg); };
  if (n_min < 2) fail("n_min must be >= 2");
  if (n_max < n_min || n_max % n_min != 0) fail("n_max must be a multiple of n_min");
  const int ratio = n_max / n_min;
  if ((ratio & (ratio - 1)) != 0) fail("n_max / n_min must be a power of two");
  if (!(eps_in > 0.0)) fail("eps_in must be positive");
  if (!(eps1 > 0.0)) fail("eps1 must be positive");
  if (!(eps2 > 0.0 && eps2 <= 1.0)) fail("eps2 must lie in (0, 1]");
  if (t1 < 1) fail("t1 must be positive");
  if (!(r_min > 0.0)) fail("r_min must be positive");
  if (k < 1 || k > n_min * n_min) fail("k must lie in [1, n_min^2]");
  if (!(lam1 > 0.0) || !(lam2 > 0.0)) fail("lam1 and lam2 must be positive");
  for (double r : rho) {
    if (!(r > 0.0)) fail("rho components must be positive");
  }
  if (k_max_admm < 1) fail("k_max_admm must be >= 1");
  if (m_iter < 1) fail("m_iter must be >= 1");
  if (!(stop_ratio > 0.0 && stop_ratio <= 1.0)) fail("stop_ratio must lie in (0, 1]");
  if (lad_max_iter < 1) fail("lad_max_iter must be >= 1");
  if (!(lad_tol > 0.0)) fail("lad_tol must be positive");
}

void SetConfigValue(SegmentationConfig& cfg, std::string_view raw_key, std::string_view raw_value) {
  std::string key = Lower(Trim(raw_key));
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string_view value = Trim(raw_value);
  if (key == "n_max") cfg.n_max = ParseNumber<int>(key, value);
  else if (key == "n_min") cfg.n_min = ParseNumber<int>(key, value);
  else if (key == "eps_in") cfg.eps_in = ParseNumber<double>(key, value);
  else if (key == "eps1") cfg.eps1 = ParseNumber<double>(key, value);
  else if (key == "eps2") cfg.eps2 = ParseNumber<double>(key, value);
  else if (key == "t1") cfg.t1 = ParseNumber<int>(key, value);
  else if (key == "r_min") cfg.r_min = ParseNumber<double>(key, value);
  else if (key == "k") cfg.k = ParseNumber<int>(key, value);
  else if (key == "lam1") cfg.lam1 = ParseNumber<double>(key, value);
  else if (key == "lam2") cfg.lam2 = ParseNumber<double>(key, value);
  else if (key == "rho1") cfg.rho[0] = ParseNumber<double>(key, value);
  else if (key == "rho2") cfg.rho[1] = ParseNumber<double>(key, value);
  else if (key == "rho3") cfg.rho[2] = ParseNumber<double>(key, value);
  else if (key == "k_max_admm" || key == "admm_iters") cfg.k_max_admm = ParseNumber<int>(key, value);
  else if (key == "m_iter") cfg.m_iter = ParseNumber<int>(key, value);
  else if (key == "stop_ratio") cfg.stop_ratio = ParseNumber<double>(key, value);
  else if (key == "lad_max_iter") cfg.lad_max_iter = ParseNumber<int>(key, value);
  else if (key == "lad_tol") cfg.lad_tol = ParseNumber<double>(key, value);
  else if (key == "method") cfg.method = ParseMethod(value);
  else if (key == "seed") cfg.seed = ParseNumber<std::uint64_t>(key, value);
  else if (key == "basis") {
    const std::string v = Lower(value);
    if (v == "dct") cfg.basis = BasisKind::kDct;
    else if (v == "poly") cfg.basis = BasisKind::kOrthoPoly;
    else throw ParameterError("config: basis must be dct or poly");
  } else {
    throw ParameterError("config: unknown key '" + std::string(raw_key) + "'");
  }
}

std::vector<std::pair<std::string, std::string>> ParseConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = Trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ParameterError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    pairs.emplace_back(Trim(view.substr(0, eq)), Trim(view.substr(eq + 1)));
  }
  return pairs;
}

void ApplyConfigFile(SegmentationConfig& cfg, const std::string& path) {
  for (const auto& [key, value] : ParseConfigFile(path)) SetConfigValue(cfg, key, value);
}

std::string FormatConfig(const SegmentationConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "n_max=" << cfg.n_max << "\n"
      << "n_min=" << cfg.n_min << "\n"
      << "eps_in=" << cfg.eps_in << "\n"
      << "eps1=" << cfg.eps1 << "\n"
      << "eps2=" << cfg.eps2 << "\n"
      << "t1=" << cfg.t1 << "\n"
      << "r_min=" << cfg.r_min << "\n"
      << "k=" << cfg.k << "\n"
      << "lam1=" << cfg.lam1 << "\n"
      << "lam2=" << cfg.lam2 << "\n"
      << "rho1=" << cfg.rho[0] << "\n"
      << "rho2=" << cfg.rho[1] << "\n"
      << "rho3=" << cfg.rho[2] << "\n"
      << "k_max_admm=" << cfg.k_max_admm << "\n"
      << "m_iter=" << cfg.m_iter << "\n"
      << "stop_ratio=" << cfg.stop_ratio << "\n"
      << "lad_max_iter=" << cfg.lad_max_iter << "\n"
      << "lad_tol=" << cfg.lad_tol << "\n"
      << "method=" << ToString(cfg.method) << "\n"
      << "basis=" << ToString(cfg.basis) << "\n"
      << "seed=" << cfg.seed << "\n";
  return out.str();
}

}  // namespace scseg
