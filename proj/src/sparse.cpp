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

#include "scseg/sparse.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "scseg/regression.hpp"

namespace scseg {

DifferenceOperator MakeDifferenceOperator(int n) {
  if (n < 2) throw ParameterError("MakeDifferenceOperator: n must be >= 2");
  const int pixels = n * n;
  const int rows = n * (n - 1);
  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> tx, ty;
  tx.reserve(static_cast<std::size_t>(2 * rows));
  ty.reserve(static_cast<std::size_t>(2 * rows));
  // Horizontal: S(i, j+1) - S(i, j).
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int row = i + n * j;
      tx.emplace_back(row, i + n * (j + 1), 1.0);
      tx.emplace_back(row, i + n * j, -1.0);
    }
  }
  // Vertical: S(i+1, j) - S(i, j).
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      const int row = i + (n - 1) * j;
      ty.emplace_back(row, (i + 1) + n * j, 1.0);
      ty.emplace_back(row, i + n * j, -1.0);
    }
  }
  DifferenceOperator d;
  d.n = n;
  d.dx.resize(rows, pixels);
  d.dx.setFromTriplets(tx.begin(), tx.end());
  d.dy.resize(rows, pixels);
  d.dy.setFromTriplets(ty.begin(), ty.end());
  std::vector<Triplet> all = tx;
  for (const Triplet& t : ty) all.emplace_back(t.row() + rows, t.col(), t.value());
  d.stacked.resize(2 * rows, pixels);
  d.stacked.setFromTriplets(all.begin(), all.end());
  return d;
}

double TotalVariation(const DifferenceOperator& d, const Eigen::VectorXd& s) {
  if (s.size() != d.stacked.cols()) throw ParameterError("TotalVariation: dimension mismatch");
  return (d.stacked * s).lpNorm<1>();
}

Eigen::VectorXd SoftThreshold(const Eigen::VectorXd& x, double lam) {
  if (!(lam >= 0.0)) throw ParameterError("SoftThreshold: lambda must be >= 0");
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double mag = std::abs(x[i]) - lam;
    out[i] = mag > 0.0 ? std::copysign(mag, x[i]) : 0.0;
  }
  return out;
}

AdmmSolver::AdmmSolver(const BasisMatrix& p, const DifferenceOperator& d, const AdmmParams& params)
    : p_(p.columns()), d_(d), params_(params) {
  if (d.n != p.n()) throw ParameterError("AdmmSolver: basis and difference operator sizes differ");
  if (!(params.lam1 > 0.0) || !(params.lam2 > 0.0)) {
    throw ParameterError("AdmmSolver: lam1 and lam2 must be positive");
  }
  for (double r : params.rho) {
    if (!(r > 0.0)) throw ParameterError("AdmmSolver: rho components must be positive");
  }
  if (params.k_max < 1) throw ParameterError("AdmmSolver: k_max must be >= 1");
  const auto [rho1, rho2, rho3] = params.rho;
  dp_ = d_.stacked * p_;
  const auto k = p_.cols();
  a_ = rho3 * dp_.transpose() * dp_ + rho2 * p_.transpose() * p_ +
       rho1 * Eigen::MatrixXd::Identity(k, k);
  a_llt_.compute(a_);
  if (a_llt_.info() != Eigen::Success) {
    throw NumericalDivergenceError("AdmmSolver: system matrix is not positive definite", 0);
  }
}

AdmmSolver::Data AdmmSolver::Prepare(const Eigen::VectorXd& f) const {
  if (f.size() != p_.rows()) throw ParameterError("AdmmSolver: block size mismatch");
  return Data{f, d_.stacked * f};
}

AdmmState AdmmSolver::InitialState(const Data& data) const {
  const auto k = p_.cols();
  AdmmState st;
  st.alpha = Eigen::VectorXd::Zero(k);
  st.y = Eigen::VectorXd::Zero(k);
  st.z = Eigen::VectorXd::Zero(data.f.size());
  st.x = Eigen::VectorXd::Zero(data.df.size());
  st.u1 = Eigen::VectorXd::Zero(k);
  st.u2 = Eigen::VectorXd::Zero(data.f.size());
  st.u3 = Eigen::VectorXd::Zero(data.df.size());
  return st;
}

void AdmmSolver::UpdateAlpha(const Data& data, AdmmState& st) const {
  const auto [rho1, rho2, rho3] = params_.rho;
  const Eigen::VectorXd rhs = st.u1 - p_.transpose() * st.u2 - dp_.transpose() * st.u3 +
                              rho1 * st.y + rho2 * p_.transpose() * (data.f - st.z) +
                              rho3 * dp_.transpose() * (data.df - st.x);
  st.alpha = a_llt_.solve(rhs);
}

void AdmmSolver::UpdateY(AdmmState& st) const {
  const double rho1 = params_.rho[0];
  st.y = SoftThreshold(st.alpha - st.u1 / rho1, 1.0 / rho1);
}

void AdmmSolver::UpdateZ(const Data& data, AdmmState& st) const {
  const double rho2 = params_.rho[1];
  st.z = SoftThreshold(data.f - p_ * st.alpha - st.u2 / rho2, params_.lam1 / rho2);
}

void AdmmSolver::UpdateX(const Data& data, AdmmState& st) const {
  const double rho3 = params_.rho[2];
  st.x = SoftThreshold(data.df - dp_ * st.alpha - st.u3 / rho3, params_.lam2 / rho3);
}

void AdmmSolver::UpdateU1(AdmmState& st) const {
  st.u1 += params_.rho[0] * (st.y - st.alpha);
}

void AdmmSolver::UpdateU2(const Data& data, AdmmState& st) const {
  st.u2 += params_.rho[1] * (st.z + p_ * st.alpha - data.f);
}

void AdmmSolver::UpdateU3(const Data& data, AdmmState& st) const {
  st.u3 += params_.rho[2] * (st.x + dp_ * st.alpha - data.df);
}

void AdmmSolver::Step(const Data& data, AdmmState& st) const {
  UpdateAlpha(data, st);
  UpdateY(st);
  UpdateZ(data, st);
  UpdateX(data, st);
  UpdateU1(st);
  UpdateU2(data, st);
  UpdateU3(data, st);
  ++st.iteration;
}

double AdmmSolver::Objective(const Data& data, const Coefficients& alpha) const {
  return alpha.lpNorm<1>() + params_.lam1 * (data.f - p_ * alpha).lpNorm<1>() +
         params_.lam2 * (data.df - dp_ * alpha).lpNorm<1>();
}

SdResult AdmmSolver::Solve(const Eigen::VectorXd& f) const {
  const Data data = Prepare(f);
  AdmmState st = InitialState(data);
  SdResult result;
  result.objective_trace.reserve(static_cast<std::size_t>(params_.k_max));
  for (int it = 1; it <= params_.k_max; ++it) {
    Step(data, st);
    if (!st.alpha.allFinite() || !st.z.allFinite() || !st.x.allFinite() ||
        !st.u2.allFinite() || !st.u3.allFinite()) {
      throw NumericalDivergenceError(
          "ADMM produced non-finite values at iteration " + std::to_string(it), it);
    }
    result.objective_trace.push_back(Objective(data, st.alpha));
  }
  result.alpha = st.alpha;
  result.s = f - p_ * st.alpha;
  result.mask = InlierMask(result.s, params_.eps_in);
  return result;
}

std::shared_ptr<const AdmmSolver> CachedAdmmSolver(const BasisMatrix& p, const AdmmParams& params) {
  using Key = std::tuple<int, int, int, double, double, double, double, double, int, double>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const AdmmSolver>> cache;
  const Key key{static_cast<int>(p.kind()), p.n(), p.k(), params.rho[0], params.rho[1],
                params.rho[2], params.lam1, params.lam2, params.k_max, params.eps_in};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const AdmmSolver>(p, MakeDifferenceOperator(p.n()), params);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(built)).first->second;
}

SdResult AdmmSolve(const PixelBlock& f, const BasisMatrix& p, const DifferenceOperator& d,
                   const AdmmParams& params) {
  if (f.n() != p.n()) throw ParameterError("AdmmSolve: block and basis sizes differ");
  return AdmmSolver(p, d, params).Solve(f.values());
}

AdmmParams AdmmParamsFrom(const SegmentationConfig& cfg) {
  AdmmParams params;
  params.lam1 = cfg.lam1;
  params.lam2 = cfg.lam2;
  params.rho = cfg.rho;
  params.k_max = cfg.k_max_admm;
  params.eps_in = cfg.eps_in;
  return params;
}

SdResult SdSegment(const PixelBlock& f, const BasisMatrix& p, const SegmentationConfig& cfg) {
  if (f.n() != p.n()) throw ParameterError("SdSegment: block and basis sizes differ");
  return CachedAdmmSolver(p, AdmmParamsFrom(cfg))->Solve(f.values());
}

}  // namespace scseg
