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
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "scseg/eval.hpp"
#include "scseg/image.hpp"
#include "synthetic.hpp"

namespace scseg {
namespace {

namespace fs = std::filesystem;
using testing::Rng;

ForegroundMask RandomMask(Rng& rng, int rows, int cols, double p) {
  ForegroundMask m(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) m.set(i, testing::Uniform(rng, 0, 1) < p);
  return m;
}

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("scseg_eval_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(PrecisionRecall, Identical) {
  Rng rng(1);
  const ForegroundMask m = RandomMask(rng, 8, 8, 0.3);
  const PrecisionRecall pr = ComputePrecisionRecall(m, m);
  EXPECT_EQ(pr.precision, 1.0);
  EXPECT_EQ(pr.recall, 1.0);
}

TEST(PrecisionRecall, AllForegroundPrediction) {
  ForegroundMask gt(8);
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 8; ++i) gt.set(i, j, true);
  }
  const PrecisionRecall pr = ComputePrecisionRecall(ForegroundMask(8, true), gt);
  EXPECT_DOUBLE_EQ(pr.precision, 0.5);
  EXPECT_DOUBLE_EQ(pr.recall, 1.0);
}

TEST(PrecisionRecall, EmptyDenominators) {
  const ForegroundMask empty(4);
  ForegroundMask one(4);
  one.set(0, true);
  auto pr = ComputePrecisionRecall(empty, empty);
  EXPECT_EQ(pr.precision, 1.0);
  EXPECT_EQ(pr.recall, 1.0);
  pr = ComputePrecisionRecall(empty, one);  // missed everything
  EXPECT_EQ(pr.precision, 0.0);
  EXPECT_EQ(pr.recall, 0.0);
  pr = ComputePrecisionRecall(one, empty);  // false alarm only
  EXPECT_EQ(pr.precision, 0.0);
  EXPECT_EQ(pr.recall, 0.0);
}

TEST(PrecisionRecall, MatchesCountingOracleAndSwaps) {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const ForegroundMask a = RandomMask(rng, 9, 13, 0.4);
    const ForegroundMask b = RandomMask(rng, 9, 13, 0.4);
    int tp = 0, fp = 0, fn = 0;
    for (int i = 0; i < 9; ++i) {
      for (int j = 0; j < 13; ++j) {
        tp += a(i, j) && b(i, j);
        fp += a(i, j) && !b(i, j);
        fn += !a(i, j) && b(i, j);
      }
    }
    const PrecisionRecall pr = ComputePrecisionRecall(a, b);
    if (tp + fp > 0) EXPECT_DOUBLE_EQ(pr.precision, static_cast<double>(tp) / (tp + fp));
    if (tp + fn > 0) EXPECT_DOUBLE_EQ(pr.recall, static_cast<double>(tp) / (tp + fn));
    const PrecisionRecall sw = ComputePrecisionRecall(b, a);
    EXPECT_EQ(sw.precision, pr.recall);
    EXPECT_EQ(sw.recall, pr.precision);
  }
  EXPECT_THROW(ComputePrecisionRecall(ForegroundMask(4), ForegroundMask(5)), ParameterError);
}

TEST(F1, Values) {
  EXPECT_EQ(F1(1.0, 1.0), 1.0);
  EXPECT_EQ(F1(0.0, 0.0), 0.0);
  EXPECT_NEAR(F1(0.91, 0.90), 0.904972, 1e-6);
  EXPECT_NEAR(F1(0.94, 0.872), 0.904724, 1e-6);
  EXPECT_EQ(std::round(F1(0.91, 0.90) * 1000.0) / 10.0, 90.5);
  EXPECT_EQ(std::round(F1(0.94, 0.872) * 1000.0) / 10.0, 90.5);
}

TEST(F1, SymmetricAndBetween) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const double p = testing::Uniform(rng, 0.01, 1), r = testing::Uniform(rng, 0.01, 1);
    EXPECT_DOUBLE_EQ(F1(p, r), F1(r, p));
    EXPECT_LE(std::min(p, r), F1(p, r) + 1e-15);
    EXPECT_LE(F1(p, r), std::max(p, r) + 1e-15);
  }
}

TEST(Aggregate, MicroIsSumOfCounts) {
  std::vector<std::pair<std::string, ConfusionCounts>> items{
      {"a", {5, 1, 2, 10}}, {"b", {0, 0, 0, 16}}, {"c", {3, 3, 0, 4}}};
  const EvalReport r = Aggregate(items);
  EXPECT_EQ(r.counts, (ConfusionCounts{8, 4, 2, 30}));
  EXPECT_DOUBLE_EQ(r.precision, 8.0 / 12.0);
  EXPECT_DOUBLE_EQ(r.recall, 8.0 / 10.0);
  EXPECT_DOUBLE_EQ(r.f1, F1(8.0 / 12.0, 0.8));
  ASSERT_EQ(r.per_image.size(), 3u);
  EXPECT_EQ(r.per_image[1].f1, 1.0);
  EXPECT_DOUBLE_EQ(r.macro_f1, (r.per_image[0].f1 + 1.0 + r.per_image[2].f1) / 3.0);
  const std::string csv = FormatReportCsv(r);
  EXPECT_EQ(csv.rfind("id,tp,fp,fn,tn,precision,recall,f1\n", 0), 0u);
  EXPECT_NE(csv.find("\nmicro,8,4,2,30,"), std::string::npos);
  EXPECT_NE(csv.find("\nmacro,"), std::string::npos);
}

TEST(Dataset, ConstantBlockWithEmptyTruth) {
  const fs::path dir = FreshDir("constant");
  WriteImage((dir / "only.img.png").string(), Image(64, 64, 1, 140));
  WriteImage((dir / "only.gt.png").string(), Image(64, 64, 1, 0));
  const EvalReport r = EvaluateDataset(dir.string(), SegmentationConfig{});
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 1.0);
  EXPECT_EQ(r.f1, 1.0);
}

TEST(Dataset, SyntheticSuiteScoresPerfectly) {
  // Twenty items whose truth the pipeline recovers exactly: two-tone text
  // tiles and the four-quadrant gradient block.
  const fs::path dir = FreshDir("suite");
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    testing::LabeledImage li;
    if (i % 2 == 0) {
      li = testing::QuadrantGradientsWithText(rng);
    } else {
      const double bg = testing::UniformInt(rng, 20, 100);
      Eigen::MatrixXd m = Eigen::MatrixXd::Constant(64, 64, bg);
      li.truth = ForegroundMask(64);
      testing::DrawStrokes(rng, li.truth, 0.1, 0.3);
      for (int c = 0; c < 64; ++c) {
        for (int r = 0; r < 64; ++r) {
          if (li.truth(r, c)) m(r, c) = 230.0;
        }
      }
      li.image = testing::GrayImageFromMatrix(m);
    }
    char id[16];
    std::snprintf(id, sizeof(id), "item%02d", i);
    WriteImage((dir / (std::string(id) + ".img.png")).string(), li.image);
    WriteImage((dir / (std::string(id) + ".gt.png")).string(), MaskToImage(li.truth));
  }
  const EvalReport r = EvaluateDataset(dir.string(), SegmentationConfig{});
  ASSERT_EQ(r.per_image.size(), 20u);
  EXPECT_EQ(r.f1, 1.0);
  EXPECT_EQ(r.per_image.front().id, "item00");
  // Same numbers regardless of the worker count.
  const EvalReport again = EvaluateDataset(dir.string(), SegmentationConfig{}, 3);
  EXPECT_EQ(FormatReportCsv(r), FormatReportCsv(again));
}

TEST(Dataset, Errors) {
  EXPECT_THROW(ListDatasetItems("/nonexistent/scseg"), DatasetError);
  const fs::path dir = FreshDir("errors");
  EXPECT_THROW(ListDatasetItems(dir.string()), DatasetError);
  WriteImage((dir / "lonely.img.png").string(), Image(64, 64, 1, 0));
  try {
    ListDatasetItems(dir.string());
    FAIL();
  } catch (const DatasetError& e) {
    EXPECT_NE(std::string(e.what()).find("lonely"), std::string::npos);
  }
  WriteImage((dir / "lonely.gt.png").string(), Image(32, 64, 1, 0));
  EXPECT_THROW(EvaluateDataset(dir.string(), SegmentationConfig{}), DatasetError);
}

TEST(Dataset, PaddingCropsBack) {
  const fs::path dir = FreshDir("pad");
  WriteImage((dir / "odd.img.png").string(), Image(70, 50, 1, 90));
  WriteImage((dir / "odd.gt.png").string(), Image(70, 50, 1, 0));
  EXPECT_THROW(EvaluateDataset(dir.string(), SegmentationConfig{}), DatasetError);
  const EvalReport r = EvaluateDataset(dir.string(), SegmentationConfig{}, 0, true);
  EXPECT_EQ(r.counts.tn, 70 * 50);
}

}  // namespace
}  // namespace scseg
