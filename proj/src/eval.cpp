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

#include "scseg/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "scseg/image.hpp"
#include "scseg/pipeline.hpp"

namespace scseg {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kImageSuffix = ".img.png";
constexpr std::string_view kTruthSuffix = ".gt.png";

bool StripSuffix(const std::string& name, std::string_view suffix, std::string& stem) {
  if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) {
    return false;
  }
  stem = name.substr(0, name.size() - suffix.size());
  return true;
}

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

ConfusionCounts CountConfusion(const ForegroundMask& pred, const ForegroundMask& gt) {
  if (pred.rows() != gt.rows() || pred.cols() != gt.cols()) {
    throw ParameterError("CountConfusion: masks differ in size");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i];
    const bool g = gt[i];
    if (p && g) ++c.tp;
    else if (p) ++c.fp;
    else if (g) ++c.fn;
    else ++c.tn;
  }
  return c;
}

PrecisionRecall PrecisionRecallFromCounts(const ConfusionCounts& c) {
  PrecisionRecall pr;
  if (c.tp + c.fp > 0) {
    pr.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  } else {
    pr.precision = c.tp + c.fn == 0 ? 1.0 : 0.0;
  }
  if (c.tp + c.fn > 0) {
    pr.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  } else {
    pr.recall = c.tp + c.fp == 0 ? 1.0 : 0.0;
  }
  return pr;
}

PrecisionRecall ComputePrecisionRecall(const ForegroundMask& pred, const ForegroundMask& gt) {
  return PrecisionRecallFromCounts(CountConfusion(pred, gt));
}

double F1(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

std::vector<std::string> ListDatasetItems(const std::string& dataset_dir) {
  if (!fs::is_directory(dataset_dir)) throw DatasetError(dataset_dir + " is not a directory");
  std::set<std::string> images, truths;
  for (const fs::directory_entry& e : fs::directory_iterator(dataset_dir)) {
    if (!e.is_regular_file()) continue;
    const std::string name = e.path().filename().string();
    std::string stem;
    if (StripSuffix(name, kImageSuffix, stem)) images.insert(stem);
    else if (StripSuffix(name, kTruthSuffix, stem)) truths.insert(stem);
  }
  for (const std::string& id : images) {
    if (!truths.count(id)) throw DatasetError("item '" + id + "' has no " + id + ".gt.png");
  }
  for (const std::string& id : truths) {
    if (!images.count(id)) throw DatasetError("item '" + id + "' has no " + id + ".img.png");
  }
  if (images.empty()) throw DatasetError(dataset_dir + " contains no <id>.img.png items");
  return {images.begin(), images.end()};
}

EvalReport Aggregate(const std::vector<std::pair<std::string, ConfusionCounts>>& items) {
  EvalReport report;
  for (const auto& [id, counts] : items) {
    ImageScore s;
    s.id = id;
    s.counts = counts;
    const PrecisionRecall pr = PrecisionRecallFromCounts(counts);
    s.precision = pr.precision;
    s.recall = pr.recall;
    s.f1 = F1(pr.precision, pr.recall);
    report.counts += counts;
    report.macro_precision += s.precision;
    report.macro_recall += s.recall;
    report.macro_f1 += s.f1;
    report.per_image.push_back(std::move(s));
  }
  if (!items.empty()) {
    const auto n = static_cast<double>(items.size());
    report.macro_precision /= n;
    report.macro_recall /= n;
    report.macro_f1 /= n;
  }
  const PrecisionRecall micro = PrecisionRecallFromCounts(report.counts);
  report.precision = micro.precision;
  report.recall = micro.recall;
  report.f1 = F1(micro.precision, micro.recall);
  return report;
}

EvalReport EvaluateDataset(const std::string& dataset_dir, const SegmentationConfig& cfg,
                           int threads, bool pad) {
  cfg.Validate();
  const std::vector<std::string> ids = ListDatasetItems(dataset_dir);
  const int count = static_cast<int>(ids.size());
  std::vector<std::pair<std::string, ConfusionCounts>> results(ids.size());
  std::vector<std::exception_ptr> errors(ids.size());
#ifdef _OPENMP
  const int num_threads = threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
#endif
#pragma omp parallel for schedule(dynamic) num_threads(num_threads)
  for (int i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const std::string& id = ids[idx];
    try {
      const fs::path base = fs::path(dataset_dir);
      const Image image = ReadImage((base / (id + std::string(kImageSuffix))).string());
      const ForegroundMask gt = ImageToMask(ReadImage((base / (id + std::string(kTruthSuffix))).string()));
      if (gt.rows() != image.height || gt.cols() != image.width) {
        throw DatasetError("item '" + id + "': ground truth size differs from image");
      }
      ForegroundMask pred;
      if (pad) {
        const Image padded = PadToMultiple(image, cfg.n_max);
        pred = SegmentImage(padded, cfg, 1).mask.Crop(0, 0, image.height, image.width);
      } else {
        pred = SegmentImage(image, cfg, 1).mask;
      }
      results[idx] = {id, CountConfusion(pred, gt)};
    } catch (const DatasetError&) {
      errors[idx] = std::current_exception();
    } catch (const std::exception& e) {
      errors[idx] = std::make_exception_ptr(DatasetError("item '" + id + "': " + e.what()));
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return Aggregate(results);
}

std::string FormatReportCsv(const EvalReport& report) {
  std::ostringstream out;
  out << "id,tp,fp,fn,tn,precision,recall,f1\n";
  for (const ImageScore& s : report.per_image) {
    out << s.id << "," << s.counts.tp << "," << s.counts.fp << "," << s.counts.fn << ","
        << s.counts.tn << "," << Fmt(s.precision) << "," << Fmt(s.recall) << "," << Fmt(s.f1)
        << "\n";
  }
  out << "micro," << report.counts.tp << "," << report.counts.fp << "," << report.counts.fn << ","
      << report.counts.tn << "," << Fmt(report.precision) << "," << Fmt(report.recall) << ","
      << Fmt(report.f1) << "\n";
  out << "macro,,,,," << Fmt(report.macro_precision) << "," << Fmt(report.macro_recall) << ","
      << Fmt(report.macro_f1) << "\n";
  return out.str();
}

std::string FormatReportSummary(const EvalReport& report, Method method) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%s: items=%zu precision=%.4f recall=%.4f f1=%.4f (macro f1=%.4f)",
                ToString(method), report.per_image.size(), report.precision, report.recall,
                report.f1, report.macro_f1);
  return buf;
}

}  // namespace scseg
