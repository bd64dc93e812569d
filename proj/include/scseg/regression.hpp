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

#ifndef SCSEG_REGRESSION_HPP_
#define SCSEG_REGRESSION_HPP_

#include <vector>

#include <Eigen/Core>

#include "scseg/basis.hpp"
#include "scseg/types.hpp"

namespace scseg {

// l2 fit: argmin ||f - P a||_2. Uses P^T f for orthonormal bases.
Coefficients LeastSquaresFit(const PixelBlock& f, const BasisMatrix& p);

// l2 fit restricted to the pixels whose index appears in `rows`. Solved with
// a column-pivoting QR on the selected rows; the normal matrix is never
// formed. Throws DegenerateInputError if fewer rows than columns.
Coefficients LeastSquaresFitRows(const Eigen::VectorXd& f, const Eigen::MatrixXd& p,
                                 const std::vector<Eigen::Index>& rows);

struct LadOptions {
  int max_iter = 50;
  double tol = 1e-6;
  // Floor on |r| in the IRLS weights 1 / max(|r|, delta).
  double delta = 1e-6;
};

struct LadResult {
  Coefficients alpha;
  int iterations = 0;
  bool converged = false;
};

// l1 fit (least absolute deviation) by iteratively reweighted least squares,
// started from the least-squares solution. Stops when the largest coefficient
// change drops below `tol`. Returns the iterate with the smallest l1
// residual; converged = false if max_iter ran out first.
LadResult LadFit(const PixelBlock& f, const BasisMatrix& p, const LadOptions& options = {});
LadResult LadFit(const Eigen::VectorXd& f, const Eigen::MatrixXd& p,
                 const LadOptions& options = {});

// f - P a.
Eigen::VectorXd Residuals(const PixelBlock& f, const BasisMatrix& p, const Coefficients& a);

// Foreground iff |r_i| >= eps_in; inliers are the pixels predicted with an
// error strictly less than eps_in.
ForegroundMask InlierMask(const Eigen::VectorXd& r, double eps_in);

double L1Norm(const Eigen::VectorXd& v);

}  // namespace scseg

#endif  // SCSEG_REGRESSION_HPP_
