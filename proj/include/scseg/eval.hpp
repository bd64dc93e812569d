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

#ifndef SCSEG_EVAL_HPP_
#define SCSEG_EVAL_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scseg/config.hpp"
#include "scseg/types.hpp"

namespace scseg {

// Pixel counts with foreground as the positive class.
struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;

  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts CountConfusion(const ForegroundMask& pred, const ForegroundMask& gt);

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};

// Empty denominators: precision is 1 when there are no predicted positives
// and no actual positives, 0 when positives were missed; recall symmetric.
PrecisionRecall PrecisionRecallFromCounts(const ConfusionCounts& c);
PrecisionRecall ComputePrecisionRecall(const ForegroundMask& pred, const ForegroundMask& gt);

// Harmonic mean; 0 when both are 0.
double F1(double precision, double recall);

struct ImageScore {
  std::string id;
  ConfusionCounts counts;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  ConfusionCounts counts;  // micro-aggregated
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Per-image (macro) averages.
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  std::vector<ImageScore> per_image;
};

// Item ids of a dataset directory: every `<id>.img.png` that has a matching
// `<id>.gt.png`, sorted. Throws DatasetError on unpaired files.
std::vector<std::string> ListDatasetItems(const std::string& dataset_dir);

// Segments every item with `cfg` and aggregates the scores. Items whose size
// is not a multiple of n_max are edge-padded and the mask cropped back when
// `pad` is set, otherwise rejected.
EvalReport EvaluateDataset(const std::string& dataset_dir, const SegmentationConfig& cfg,
                           int threads = 0, bool pad = false);

// Builds a report from already computed (id, prediction, ground truth) triples.
EvalReport Aggregate(const std::vector<std::pair<std::string, ConfusionCounts>>& items);

// "id,tp,fp,fn,tn,precision,recall,f1" rows followed by "micro" and "macro".
std::string FormatReportCsv(const EvalReport& report);
std::string FormatReportSummary(const EvalReport& report, Method method);

}  // namespace scseg

#endif  // SCSEG_EVAL_HPP_
