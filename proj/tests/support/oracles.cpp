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

#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/LU>

namespace scseg::testing {

double DirectDct2(const Eigen::MatrixXd& f, int u, int v) {
  const int n = static_cast<int>(f.rows());
  const double pi = std::numbers::pi;
  const double bu = u == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
  const double bv = v == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
  double sum = 0.0;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      sum += f(x, y) * std::cos((2 * x + 1) * pi * u / (2.0 * n)) *
             std::cos((2 * y + 1) * pi * v / (2.0 * n));
    }
  }
  return bu * bv * sum;
}

L1Optimum BruteForceL1(const Eigen::VectorXd& f, const Eigen::MatrixXd& p) {
  const int m = static_cast<int>(p.rows());
  const int k = static_cast<int>(p.cols());
  L1Optimum best{std::numeric_limits<double>::infinity(), Eigen::VectorXd::Zero(k)};
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    Eigen::MatrixXd a(k, k);
    Eigen::VectorXd b(k);
    for (int r = 0; r < k; ++r) {
      a.row(r) = p.row(idx[static_cast<std::size_t>(r)]);
      b[r] = f[idx[static_cast<std::size_t>(r)]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.isInvertible()) {
      const Eigen::VectorXd alpha = lu.solve(b);
      const double obj = (f - p * alpha).cwiseAbs().sum();
      if (obj < best.objective) best = {obj, alpha};
    }
    // Next combination in lexicographic order.
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

double BruteForceTv(const Eigen::MatrixXd& s) {
  const int n = static_cast<int>(s.rows());
  double tv = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i + 1 < n) tv += std::abs(s(i + 1, j) - s(i, j));
      if (j + 1 < n) tv += std::abs(s(i, j + 1) - s(i, j));
    }
  }
  return tv;
}

Eigen::MatrixXd DenseDifference(int n) {
  const int nn = n * n;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2 * n * (n - 1), nn);
  int row = 0;
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i < n; ++i, ++row) {
      d(row, i + n * (j + 1)) = 1.0;
      d(row, i + n * j) = -1.0;
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i + 1 < n; ++i, ++row) {
      d(row, i + 1 + n * j) = 1.0;
      d(row, i + n * j) = -1.0;
    }
  }
  return d;
}

}  // namespace scseg::testing
