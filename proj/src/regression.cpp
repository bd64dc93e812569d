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

#include "scseg/regression.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/QR>

namespace scseg {

namespace {

void CheckDims(const PixelBlock& f, const BasisMatrix& p, const char* who) {
  if (f.n() != p.n()) {
    throw ParameterError(std::string(who) + ": block side " + std::to_string(f.n()) +
                         " does not match basis side " + std::to_string(p.n()));
  }
}

}  // namespace

Coefficients LeastSquaresFit(const PixelBlock& f, const BasisMatrix& p) {
  CheckDims(f, p, "LeastSquaresFit");
  if (p.orthonormal()) return p.columns().transpose() * f.values();
  return p.columns().colPivHouseholderQr().solve(f.values());
}

Coefficients LeastSquaresFitRows(const Eigen::VectorXd& f, const Eigen::MatrixXd& p,
                                 const std::vector<Eigen::Index>& rows) {
  if (f.size() != p.rows()) throw ParameterError("LeastSquaresFitRows: dimension mismatch");
  const auto m = static_cast<Eigen::Index>(rows.size());
  if (m < p.cols()) {
    throw DegenerateInputError("LeastSquaresFitRows: " + std::to_string(m) +
                               " pixels cannot determine " + std::to_string(p.cols()) +
                               " coefficients");
  }
  Eigen::MatrixXd sub(m, p.cols());
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    sub.row(i) = p.row(rows[static_cast<std::size_t>(i)]);
    rhs[i] = f[rows[static_cast<std::size_t>(i)]];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
  if (qr.rank() < p.cols()) {
    throw DegenerateInputError("LeastSquaresFitRows: selected pixels are rank deficient");
  }
  return qr.solve(rhs);
}

LadResult LadFit(const PixelBlock& f, const BasisMatrix& p, const LadOptions& options) {
  CheckDims(f, p, "LadFit");
  return LadFit(f.values(), p.columns(), options);
}

LadResult LadFit(const Eigen::VectorXd& f, const Eigen::MatrixXd& p, const LadOptions& options) {
  if (f.size() != p.rows()) throw ParameterError("LadFit: dimension mismatch");
  if (options.max_iter < 1 || !(options.tol > 0.0) || !(options.delta > 0.0)) {
    throw ParameterError("LadFit: max_iter, tol and delta must be positive");
  }
  LadResult result;
  Eigen::VectorXd alpha = p.colPivHouseholderQr().solve(f);
  // IRLS is not monotone in the l1 objective near degenerate residuals, so
  // the best iterate seen is what gets returned.
  result.alpha = alpha;
  double best = (f - p * alpha).lpNorm<1>();
  Eigen::MatrixXd weighted(p.rows(), p.cols());
  for (int it = 1; it <= options.max_iter; ++it) {
    const Eigen::VectorXd r = f - p * alpha;
    const Eigen::VectorXd w = r.cwiseAbs().cwiseMax(options.delta).cwiseInverse();
    weighted = w.asDiagonal() * p;
    const Eigen::MatrixXd normal = p.transpose() * weighted;
    Eigen::VectorXd next = normal.ldlt().solve(weighted.transpose() * f);
    if (!next.allFinite()) break;
    const double change = (next - alpha).cwiseAbs().maxCoeff();
    alpha = std::move(next);
    result.iterations = it;
    const double obj = (f - p * alpha).lpNorm<1>();
    if (obj < best) {
      best = obj;
      result.alpha = alpha;
    }
    if (change < options.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

Eigen::VectorXd Residuals(const PixelBlock& f, const BasisMatrix& p, const Coefficients& a) {
  CheckDims(f, p, "Residuals");
  if (a.size() != p.k()) {
    throw ParameterError("Residuals: " + std::to_string(a.size()) + " coefficients for " +
                         std::to_string(p.k()) + " basis functions");
  }
  return f.values() - p.columns() * a;
}

ForegroundMask InlierMask(const Eigen::VectorXd& r, double eps_in) {
  if (!(eps_in > 0.0)) throw ParameterError("InlierMask: eps_in must be positive");
  const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(r.size()))));
  if (static_cast<Eigen::Index>(n) * n != r.size()) {
    throw ParameterError("InlierMask: residual length is not a square");
  }
  ForegroundMask mask(n);
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    mask.set(static_cast<std::size_t>(i), std::abs(r[i]) >= eps_in);
  }
  return mask;
}

double L1Norm(const Eigen::VectorXd& v) { return v.lpNorm<1>(); }

}  // namespace scseg
