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

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "scseg/basis.hpp"
#include "scseg/regression.hpp"
#include "synthetic.hpp"

namespace scseg {
namespace {

using testing::Rng;

Eigen::VectorXd RandomVector(Rng& rng, Eigen::Index size, double lo, double hi) {
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = testing::Uniform(rng, lo, hi);
  return v;
}

// Random pixel block of side n inside [0, 255].
PixelBlock RandomBlock(Rng& rng, int n) { return PixelBlock(n, RandomVector(rng, n * n, 0, 255)); }

// alpha0 chosen so that P alpha0 stays inside [0, 255].
PixelBlock ModelBlock(const BasisMatrix& p, const Eigen::VectorXd& alpha0) {
  return PixelBlock(p.n(), p.columns() * alpha0);
}

Eigen::VectorXd SmallAlpha(Rng& rng, const BasisMatrix& p) {
  Eigen::VectorXd a = RandomVector(rng, p.k(), -5, 5);
  a[0] = 128.0 * p.n();
  return a;
}

TEST(PixelBlock, ValidatesValues) {
  EXPECT_THROW(PixelBlock(2, Eigen::VectorXd::Zero(3)), ParameterError);
  EXPECT_THROW(PixelBlock(1, Eigen::VectorXd::Constant(1, 256.0)), ParameterError);
  EXPECT_THROW(PixelBlock(1, Eigen::VectorXd::Constant(1, -0.5)), ParameterError);
  EXPECT_THROW(PixelBlock(1, Eigen::VectorXd::Constant(1, std::nan(""))), ParameterError);
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 3, 4;
  const PixelBlock b = PixelBlock::FromMatrix(m);
  EXPECT_EQ(b.values(), Eigen::Vector4d(1, 3, 2, 4));  // column-major
  EXPECT_EQ(b(0, 1), 2.0);
  EXPECT_EQ(b.ToMatrix(), m);
}

TEST(LeastSquares, RecoversExactModel) {
  Rng rng(1);
  const BasisMatrix p = DctBasis(16, 10);
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXd a0 = SmallAlpha(rng, p);
    EXPECT_LT((LeastSquaresFit(ModelBlock(p, a0), p) - a0).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(LeastSquares, ConstantBlock) {
  for (int k : {1, 6, 10}) {
    const Coefficients a = LeastSquaresFit(PixelBlock::Constant(8, 100), DctBasis(8, k));
    EXPECT_NEAR(a[0], 800.0, 1e-10);
    for (int j = 1; j < k; ++j) EXPECT_NEAR(a[j], 0.0, 1e-10);
  }
}

TEST(LeastSquares, NormalEquationsHold) {
  Rng rng(2);
  for (BasisKind kind : {BasisKind::kDct, BasisKind::kOrthoPoly}) {
    const BasisMatrix p = MakeBasis(kind, 16, 10);
    const PixelBlock f = RandomBlock(rng, 16);
    const Eigen::VectorXd r = Residuals(f, p, LeastSquaresFit(f, p));
    EXPECT_LT((p.columns().transpose() * r).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(LeastSquares, IdempotentAndClosedForm) {
  Rng rng(3);
  const BasisMatrix p = OrthoPolyBasis(16, 10);
  const PixelBlock f = RandomBlock(rng, 16);
  const Coefficients a = LeastSquaresFit(f, p);
  // The reconstruction can leave [0, 255] slightly, so refit the raw vector.
  const Coefficients again = LeastSquaresFitRows(p.columns() * a, p.columns(), [] {
    std::vector<Eigen::Index> all(256);
    for (Eigen::Index i = 0; i < 256; ++i) all[static_cast<std::size_t>(i)] = i;
    return all;
  }());
  EXPECT_LT((again - a).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((a - p.columns().transpose() * f.values()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(LeastSquares, DimensionMismatch) {
  EXPECT_THROW(LeastSquaresFit(PixelBlock::Constant(8, 1), DctBasis(16, 3)), ParameterError);
}

TEST(LeastSquaresRows, SubsetFitAndDegenerate) {
  const BasisMatrix p = DctBasis(8, 3);
  Rng rng(4);
  const Eigen::VectorXd a0 = SmallAlpha(rng, p);
  const PixelBlock f = ModelBlock(p, a0);
  std::vector<Eigen::Index> rows{0, 5, 9, 18, 27, 36, 40, 63};
  EXPECT_LT((LeastSquaresFitRows(f.values(), p.columns(), rows) - a0).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_THROW(LeastSquaresFitRows(f.values(), p.columns(), {0, 1}), DegenerateInputError);
}

TEST(Lad, RecoversExactModel) {
  Rng rng(5);
  const BasisMatrix p = DctBasis(8, 6);
  const Eigen::VectorXd a0 = SmallAlpha(rng, p);
  const LadResult r = LadFit(ModelBlock(p, a0), p);
  EXPECT_LT((r.alpha - a0).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Lad, ResistsOutliersBetterThanLeastSquares) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(8, 8, 100.0);
  Rng rng(6);
  int placed = 0;
  while (placed < 12) {
    const int i = testing::UniformInt(rng, 0, 7), j = testing::UniformInt(rng, 0, 7);
    if (m(i, j) == 255.0) continue;
    m(i, j) = 255.0;
    ++placed;
  }
  const PixelBlock f = PixelBlock::FromMatrix(m);
  const BasisMatrix p = DctBasis(8, 10);
  const double lad = LadFit(f, p).alpha[0];
  const double lsf = LeastSquaresFit(f, p)[0];
  EXPECT_LT(std::abs(lad - 800.0), std::abs(lsf - 800.0));
}

TEST(Lad, MatchesLpOracleOnSmallInstances) {
  Rng rng(7);
  const BasisMatrix p = DctBasis(4, 3);
  for (int t = 0; t < 30; ++t) {
    Eigen::VectorXd f = p.columns() * Eigen::Vector3d(testing::Uniform(rng, 200, 600),
                                                      testing::Uniform(rng, -40, 40),
                                                      testing::Uniform(rng, -40, 40));
    for (int o = 0; o < 4; ++o) f[testing::UniformInt(rng, 0, 15)] += testing::Uniform(rng, -80, 80);
    f += RandomVector(rng, 16, -2, 2);
    const testing::L1Optimum oracle = testing::BruteForceL1(f, p.columns());
    // Run to convergence; the default iteration cap is checked separately.
    const LadResult r = LadFit(f, p.columns(), LadOptions{500, 1e-6, 1e-6});
    EXPECT_LE((f - p.columns() * r.alpha).lpNorm<1>(), oracle.objective + 1e-4);
  }
}

TEST(Lad, NeverWorseThanLeastSquaresInL1) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const BasisMatrix p = DctBasis(8, 10);
    const PixelBlock f = RandomBlock(rng, 8);
    const double lad = L1Norm(Residuals(f, p, LadFit(f, p).alpha));
    const double lsf = L1Norm(Residuals(f, p, LeastSquaresFit(f, p)));
    EXPECT_LE(lad, lsf + 1e-6);
  }
}

TEST(Lad, ReportsNonConvergence) {
  Rng rng(9);
  const PixelBlock f = RandomBlock(rng, 8);
  const LadResult r = LadFit(f, DctBasis(8, 10), LadOptions{1, 1e-12, 1e-6});
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_THROW(LadFit(f, DctBasis(8, 10), LadOptions{0, 1e-6, 1e-6}), ParameterError);
}

TEST(Residuals, Basics) {
  Rng rng(10);
  const BasisMatrix p = DctBasis(8, 6);
  const PixelBlock f = RandomBlock(rng, 8);
  EXPECT_EQ(Residuals(f, p, Coefficients::Zero(6)), f.values());
  const Eigen::VectorXd a0 = SmallAlpha(rng, p);
  EXPECT_LT(Residuals(ModelBlock(p, a0), p, a0).cwiseAbs().maxCoeff(), 1e-10);
  const Eigen::VectorXd a = RandomVector(rng, 6, -50, 50);
  const Eigen::VectorXd r = Residuals(f, p, a);
  for (int i = 0; i < 64; ++i) {
    double pred = 0.0;
    for (int j = 0; j < 6; ++j) pred += p.columns()(i, j) * a[j];
    EXPECT_NEAR(r[i], f.values()[i] - pred, 1e-12);
  }
  EXPECT_THROW(Residuals(f, p, Coefficients::Zero(5)), ParameterError);
}

TEST(InlierMask, BoundaryIsForeground) {
  Eigen::VectorXd r(9);
  r << 5, -5, 10, -10, 11, 0, 9.999, -10.001, 0;
  const ForegroundMask m = InlierMask(r, 10.0);
  const bool want[] = {false, false, true, true, true, false, false, true, false};
  for (int i = 0; i < 9; ++i) EXPECT_EQ(m[static_cast<std::size_t>(i)], want[i]) << i;
  EXPECT_EQ(InlierMask(Eigen::VectorXd::Zero(16), 10.0).count(), 0u);
}

TEST(InlierMask, MonotoneInThreshold) {
  Rng rng(11);
  const Eigen::VectorXd r = RandomVector(rng, 64, -30, 30);
  ForegroundMask prev = InlierMask(r, 1.0);
  for (double eps = 2.0; eps < 35.0; eps += 1.0) {
    const ForegroundMask m = InlierMask(r, eps);
    for (std::size_t i = 0; i < m.size(); ++i) {
      EXPECT_TRUE(!m[i] || prev[i]);
      EXPECT_EQ(m[i], std::abs(r[static_cast<Eigen::Index>(i)]) >= eps);
    }
    prev = m;
  }
  EXPECT_THROW(InlierMask(r, 0.0), ParameterError);
  EXPECT_THROW(InlierMask(Eigen::VectorXd::Zero(5), 1.0), ParameterError);
}

}  // namespace
}  // namespace scseg
