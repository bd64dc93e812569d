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

#ifndef SCSEG_SPARSE_HPP_
#define SCSEG_SPARSE_HPP_

#include <array>
#include <memory>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "scseg/basis.hpp"
#include "scseg/config.hpp"
#include "scseg/types.hpp"

namespace scseg {

// Anisotropic first differences over an n x n block in column-major layout.
// Row i + n*j of dx is S(i, j+1) - S(i, j); row i + (n-1)*j of dy is
// S(i+1, j) - S(i, j). Differences leaving the block are omitted.
struct DifferenceOperator {
  int n = 0;
  Eigen::SparseMatrix<double> dx;
  Eigen::SparseMatrix<double> dy;
  Eigen::SparseMatrix<double> stacked;  // [dx; dy]
};

DifferenceOperator MakeDifferenceOperator(int n);

// ||D s||_1, the anisotropic total variation of s.
double TotalVariation(const DifferenceOperator& d, const Eigen::VectorXd& s);

// sign(x) * max(|x| - lam, 0), elementwise.
Eigen::VectorXd SoftThreshold(const Eigen::VectorXd& x, double lam);

struct AdmmParams {
  double lam1 = 10.0;
  double lam2 = 4.0;
  std::array<double, 3> rho = {1.0, 1.0, 1.0};
  int k_max = 50;
  // Threshold on |s| used to build the foreground mask.
  double eps_in = 10.0;
};

struct AdmmState {
  Coefficients alpha;
  Eigen::VectorXd y;  // copy of alpha          (size K)
  Eigen::VectorXd z;  // copy of f - P alpha    (size n^2)
  Eigen::VectorXd x;  // copy of D f - D P alpha (size rows(D))
  Eigen::VectorXd u1, u2, u3;
  int iteration = 0;
};

struct SdResult {
  Coefficients alpha;
  Eigen::VectorXd s;
  ForegroundMask mask;
  std::vector<double> objective_trace;
};

// ADMM for
//   min ||y||_1 + lam1 ||z||_1 + lam2 ||x||_1
//   s.t. y = alpha, z = f - P alpha, x = D f - D P alpha.
// The K x K matrix A = rho3 (DP)^T DP + rho2 P^T P + rho1 I is factored once
// at construction. Each Update* method applies one line of the iteration and
// writes into `state`; Step() applies all seven in order.
class AdmmSolver {
 public:
  AdmmSolver(const BasisMatrix& p, const DifferenceOperator& d, const AdmmParams& params);

  const Eigen::MatrixXd& basis() const { return p_; }
  const Eigen::MatrixXd& dp() const { return dp_; }
  const DifferenceOperator& difference() const { return d_; }
  const AdmmParams& params() const { return params_; }
  // A as a dense matrix, for inspection.
  const Eigen::MatrixXd& system_matrix() const { return a_; }

  // Problem data derived from one block.
  struct Data {
    Eigen::VectorXd f;
    Eigen::VectorXd df;  // D f
  };
  Data Prepare(const Eigen::VectorXd& f) const;

  // All primal and dual variables zero.
  AdmmState InitialState(const Data& data) const;

  void UpdateAlpha(const Data& data, AdmmState& st) const;
  void UpdateY(AdmmState& st) const;
  void UpdateZ(const Data& data, AdmmState& st) const;
  void UpdateX(const Data& data, AdmmState& st) const;
  void UpdateU1(AdmmState& st) const;
  void UpdateU2(const Data& data, AdmmState& st) const;
  void UpdateU3(const Data& data, AdmmState& st) const;
  void Step(const Data& data, AdmmState& st) const;

  // ||alpha||_1 + lam1 ||f - P alpha||_1 + lam2 ||D f - D P alpha||_1
  double Objective(const Data& data, const Coefficients& alpha) const;

  // Runs k_max iterations from zero. Throws NumericalDivergenceError if a
  // variable becomes non-finite.
  SdResult Solve(const Eigen::VectorXd& f) const;

 private:
  Eigen::MatrixXd p_;
  DifferenceOperator d_;
  AdmmParams params_;
  Eigen::MatrixXd dp_;
  Eigen::MatrixXd a_;
  Eigen::LLT<Eigen::MatrixXd> a_llt_;
};

// Shared solver for (basis kind, n, K, rho); the factorization depends on
// nothing else. Thread-safe; lam/k_max/eps_in are taken from `params`.
std::shared_ptr<const AdmmSolver> CachedAdmmSolver(const BasisMatrix& p, const AdmmParams& params);

SdResult AdmmSolve(const PixelBlock& f, const BasisMatrix& p, const DifferenceOperator& d,
                   const AdmmParams& params);

// Sparse-decomposition segmentation of one block: foreground iff |s| >= eps_in.
SdResult SdSegment(const PixelBlock& f, const BasisMatrix& p, const SegmentationConfig& cfg);

AdmmParams AdmmParamsFrom(const SegmentationConfig& cfg);

}  // namespace scseg

#endif  // SCSEG_SPARSE_HPP_
