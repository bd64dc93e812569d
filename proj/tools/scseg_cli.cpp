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

// scseg: command-line front end.
//
//   scseg segment   [options] <input> <output-mask>
//   scseg decompose [options] <input> <output-prefix>
//   scseg basis-rmse --blocks <dir> [--n 64] [--kmax 20] [--kind both]
//   scseg eval      [options] <dataset-dir>
//
// Segmentation parameters come from, in increasing priority, the built-in
// defaults, a --config file and individual flags.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "scseg/scseg.hpp"

namespace {

namespace fs = std::filesystem;
using namespace scseg;

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

// A failure tagged with the stage it happened in.
struct StageError {
  std::string stage;
  std::string message;
  int code = kExitError;
};

template <typename F>
auto InStage(const std::string& stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParameterError& e) {
    throw StageError{stage, e.what(), kExitUsage};
  } catch (const std::exception& e) {
    throw StageError{stage, e.what(), kExitError};
  }
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// Every SegmentationConfig field as a string-valued flag, so that only flags
// the user actually typed override the file and the defaults.
struct ConfigFlags {
  std::string config_file;
  std::map<std::string, std::string> values;  // key -> raw text
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void Register(CLI::App& app) {
    const SegmentationConfig d;
    app.add_option("--config", config_file, "key=value file; flags override it")
        ->check(CLI::ExistingFile);
    auto add = [&](const std::string& flag, const std::string& help, const std::string& def) {
      CLI::Option* opt = app.add_option("--" + flag, values[flag], help)->default_str(def);
      options.emplace_back(flag, opt);
    };
    add("method", "core method: ransac, sd, lad or lsf", ToString(d.method));
    add("basis", "smooth basis: dct or poly", ToString(d.basis));
    add("seed", "random seed for RANSAC sampling", std::to_string(d.seed));
    add("n-max", "largest (root) block side", std::to_string(d.n_max));
    add("n-min", "smallest block side of the quadtree", std::to_string(d.n_min));
    add("eps-in", "inlier distortion threshold", Num(d.eps_in));
    add("eps1", "standard deviation threshold for pure background", Num(d.eps1));
    add("eps2", "inlier ratio above which a block is not split", Num(d.eps2));
    add("t1", "color count limit for text on constant background", std::to_string(d.t1));
    add("r-min", "minimum intensity range for text on constant background", Num(d.r_min));
    add("k", "number of basis functions (6 when --method lad)", std::to_string(d.k));
    add("lam1", "weight of the l1 norm of the sparse layer", Num(d.lam1));
    add("lam2", "weight of the total variation of the sparse layer", Num(d.lam2));
    add("rho1", "ADMM penalty for the coefficient copy", Num(d.rho[0]));
    add("rho2", "ADMM penalty for the sparse layer copy", Num(d.rho[1]));
    add("rho3", "ADMM penalty for the gradient copy", Num(d.rho[2]));
    add("admm-iters", "ADMM iterations", std::to_string(d.k_max_admm));
    add("m-iter", "RANSAC iterations", std::to_string(d.m_iter));
    add("stop-ratio", "RANSAC early stop consensus ratio", Num(d.stop_ratio));
    add("lad-max-iter", "IRLS iterations for the lad method", std::to_string(d.lad_max_iter));
    add("lad-tol", "IRLS coefficient tolerance", Num(d.lad_tol));
  }

  SegmentationConfig Resolve() const {
    std::vector<std::pair<std::string, std::string>> pairs;
    if (!config_file.empty()) pairs = ParseConfigFile(config_file);
    for (const auto& [flag, opt] : options) {
      if (opt->count() > 0) pairs.emplace_back(flag, values.at(flag));
    }
    // The method decides the default basis count, so find it first.
    Method method = Method::kRansac;
    for (const auto& [key, value] : pairs) {
      std::string k = key;
      std::replace(k.begin(), k.end(), '-', '_');
      if (k == "method") method = ParseMethod(value);
    }
    SegmentationConfig cfg = SegmentationConfig::ForMethod(method);
    for (const auto& [key, value] : pairs) SetConfigValue(cfg, key, value);
    cfg.Validate();
    return cfg;
  }
};

int ResolveThreads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("SCSEG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    throw StageError{"threads", std::string("SCSEG_THREADS must be a positive integer, got '") + env + "'",
                     kExitUsage};
  }
  return 0;
}

Image ReadInput(const std::string& path, const SegmentationConfig& cfg, bool pad) {
  Image image = InStage("read input", [&] { return ReadImage(path); });
  if (pad) image = PadToMultiple(image, cfg.n_max);
  return image;
}

void WriteOutput(const std::string& path, const Image& image) {
  InStage("write output", [&] {
    WriteImage(path, image);
    return 0;
  });
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw StageError{"write output", "cannot write " + path};
}

int RunSegment(const SegmentationConfig& cfg, int threads, const std::string& in,
               const std::string& out, const std::string& stats, const std::string& background,
               bool pad) {
  const Image original = ReadInput(in, cfg, false);
  const Image image = pad ? PadToMultiple(original, cfg.n_max) : original;
  const ImagePlanes planes = ToPlanes(image);
  const ImageSegmentation seg = InStage("segment", [&] { return SegmentImage(planes, cfg, threads); });
  const ForegroundMask mask = seg.mask.Crop(0, 0, original.height, original.width);
  WriteOutput(out, MaskToImage(mask));
  if (!stats.empty()) WriteText(stats, FormatModeStatisticsCsv(CollectModeStatistics(seg)));
  if (!background.empty()) {
    int skipped = 0;
    const Eigen::MatrixXd bg = InStage("reconstruct background", [&] {
      return ReconstructImageBackground(planes.luma, seg, cfg, &skipped);
    });
    if (skipped > 0) {
      std::cerr << "scseg: reconstruct background: " << skipped
                << " blocks had too few background pixels and were left unchanged\n";
    }
    WriteOutput(background, MatrixToImage(bg.topLeftCorner(original.height, original.width)));
  }
  return 0;
}

// Per-tile smooth model and sparse layer for the configured method, without
// the quadtree or the shortcut stages.
int RunDecompose(const SegmentationConfig& cfg, int threads, const std::string& in,
                 const std::string& prefix, bool pad) {
  const Image original = ReadInput(in, cfg, false);
  const Image image = pad ? PadToMultiple(original, cfg.n_max) : original;
  const ImagePlanes planes = ToPlanes(image);
  const int n = cfg.n_max;
  if (planes.rows() % n != 0 || planes.cols() % n != 0) {
    throw StageError{"decompose", "image sides must be multiples of " + std::to_string(n) + " (use --pad)"};
  }
  const int tiles_across = planes.cols() / n;
  const int count = (planes.rows() / n) * tiles_across;
  Eigen::MatrixXd smooth(planes.rows(), planes.cols());
  Eigen::MatrixXd sparse(planes.rows(), planes.cols());
  ForegroundMask mask(planes.rows(), planes.cols());
  const auto basis = CachedBasis(cfg.basis, n, cfg.k);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#ifdef _OPENMP
  const int num_threads = threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
#endif
#pragma omp parallel for schedule(dynamic) num_threads(num_threads)
  for (int t = 0; t < count; ++t) {
    const int row = (t / tiles_across) * n, col = (t % tiles_across) * n;
    try {
      const PixelBlock f = PixelBlock::FromMatrix(planes.luma.block(row, col, n, n));
      Coefficients alpha;
      switch (cfg.method) {
        case Method::kSd:
          alpha = SdSegment(f, *basis, cfg).alpha;
          break;
        case Method::kRansac: {
          RansacOptions opts;
          opts.eps_in = cfg.eps_in;
          opts.m_iter = cfg.m_iter;
          opts.stop_ratio = cfg.stop_ratio;
          opts.seed = BlockSeed(cfg.seed, row, col, n);
          alpha = RansacSegment(f, *basis, opts).alpha;
          break;
        }
        case Method::kLad:
          alpha = LadFit(f, *basis, LadOptions{cfg.lad_max_iter, cfg.lad_tol, 1e-6}).alpha;
          break;
        case Method::kLsf:
          alpha = LeastSquaresFit(f, *basis);
          break;
      }
      const Eigen::VectorXd model = basis->columns() * alpha;
      const Eigen::VectorXd s = f.values() - model;
      smooth.block(row, col, n, n) = Eigen::Map<const Eigen::MatrixXd>(model.data(), n, n);
      sparse.block(row, col, n, n) = Eigen::Map<const Eigen::MatrixXd>(s.data(), n, n).cwiseAbs();
      mask.Paste(InlierMask(s, cfg.eps_in), row, col);
    } catch (...) {
      errors[static_cast<std::size_t>(t)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) InStage("decompose", [&]() -> int { std::rethrow_exception(e); });
  }
  const int h = original.height, w = original.width;
  WriteOutput(prefix + "_background.png", MatrixToImage(smooth.topLeftCorner(h, w)));
  WriteOutput(prefix + "_sparse.png", MatrixToImage(sparse.topLeftCorner(h, w)));
  WriteOutput(prefix + "_mask.png", MaskToImage(mask.Crop(0, 0, h, w)));
  return 0;
}

int RunBasisRmse(int n, int k_max, const std::string& kind, const std::string& blocks_dir,
                 const std::string& output) {
  std::vector<BasisKind> kinds;
  if (kind == "dct" || kind == "both") kinds.push_back(BasisKind::kDct);
  if (kind == "poly" || kind == "both") kinds.push_back(BasisKind::kOrthoPoly);
  std::vector<fs::path> files;
  InStage("read input", [&] {
    if (!fs::is_directory(blocks_dir)) throw InputError(blocks_dir + " is not a directory");
    for (const auto& e : fs::directory_iterator(blocks_dir)) {
      const std::string ext = e.path().extension().string();
      if (e.is_regular_file() && (ext == ".png" || ext == ".pgm" || ext == ".ppm")) {
        files.push_back(e.path());
      }
    }
    return 0;
  });
  std::sort(files.begin(), files.end());
  std::vector<PixelBlock> blocks;
  for (const fs::path& file : files) {
    const ImagePlanes planes = ToPlanes(ReadInput(file.string(), SegmentationConfig{}, false));
    for (int r = 0; r + n <= planes.rows(); r += n) {
      for (int c = 0; c + n <= planes.cols(); c += n) {
        blocks.push_back(PixelBlock::FromMatrix(planes.luma.block(r, c, n, n)));
      }
    }
  }
  if (blocks.empty()) {
    throw StageError{"read input", "no " + std::to_string(n) + "x" + std::to_string(n) +
                                       " blocks found in " + blocks_dir};
  }
  const auto rows = InStage("basis study", [&] { return BasisRmseStudy(blocks, k_max, kinds); });
  std::string csv = "k,kind,rmse\n";
  for (const RmseRow& r : rows) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%d,%s,%.6f\n", r.k, ToString(r.kind), r.rmse);
    csv += buf;
  }
  if (output.empty()) std::cout << csv;
  else WriteText(output, csv);
  return 0;
}

int RunEval(const SegmentationConfig& cfg, int threads, const std::string& dataset,
            const std::string& report, bool pad) {
  const EvalReport r = InStage("evaluate", [&] { return EvaluateDataset(dataset, cfg, threads, pad); });
  if (!report.empty()) WriteText(report, FormatReportCsv(r));
  std::cout << FormatReportSummary(r, cfg.method) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smooth background / sparse foreground segmentation for screen content"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Show help for every command");

  ConfigFlags flags;
  flags.Register(app);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: $SCSEG_THREADS, else all cores)")
      ->check(CLI::PositiveNumber);
  bool show_config = false;
  app.add_flag("--show-config", show_config, "print the effective parameters to stderr");

  std::string in, out, stats, background, prefix, dataset, report, blocks_dir, kind = "both",
                                                                             rmse_out;
  bool pad = false;
  int rmse_n = 64, k_max = 20;

  CLI::App* segment = app.add_subcommand("segment", "write the foreground mask of an image");
  segment->add_option("input", in, "input image (PNG or PGM/PPM)")->required();
  segment->add_option("output", out, "output mask, 0 = background, 255 = foreground")->required();
  segment->add_option("--stats", stats, "write per-mode block statistics as CSV");
  segment->add_option("--background", background, "write the luma with foreground filled by the model");
  segment->add_flag("--pad", pad, "edge-pad to a multiple of --n-max, crop outputs back");

  CLI::App* decompose =
      app.add_subcommand("decompose", "write smooth layer, |sparse| layer and mask per n-max tile");
  decompose->add_option("input", in, "input image")->required();
  decompose->add_option("prefix", prefix, "writes <prefix>_background/_sparse/_mask.png")->required();
  decompose->add_flag("--pad", pad, "edge-pad to a multiple of --n-max");

  CLI::App* rmse = app.add_subcommand("basis-rmse", "reconstruction RMSE against the number of bases");
  rmse->add_option("--blocks", blocks_dir, "directory of background images, cut into n x n blocks")
      ->required();
  rmse->add_option("--n", rmse_n, "block side")->capture_default_str()->check(CLI::PositiveNumber);
  rmse->add_option("--kmax", k_max, "largest basis count")->capture_default_str()->check(CLI::PositiveNumber);
  rmse->add_option("--kind", kind, "dct, poly or both")
      ->capture_default_str()
      ->check(CLI::IsMember({"dct", "poly", "both"}));
  rmse->add_option("--output", rmse_out, "CSV path (default: stdout)");

  CLI::App* eval = app.add_subcommand("eval", "precision, recall and F1 over an annotated dataset");
  eval->add_option("dataset", dataset, "directory of <id>.img.png / <id>.gt.png pairs")->required();
  eval->add_option("--report", report, "write per-item scores as CSV");
  eval->add_flag("--pad", pad, "edge-pad items to a multiple of --n-max");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const SegmentationConfig cfg = InStage("config", [&] { return flags.Resolve(); });
    const int workers = ResolveThreads(threads);
    if (show_config) std::cerr << FormatConfig(cfg);
    if (segment->parsed()) return RunSegment(cfg, workers, in, out, stats, background, pad);
    if (decompose->parsed()) return RunDecompose(cfg, workers, in, prefix, pad);
    if (rmse->parsed()) return RunBasisRmse(rmse_n, k_max, kind, blocks_dir, rmse_out);
    if (eval->parsed()) return RunEval(cfg, workers, dataset, report, pad);
  } catch (const StageError& e) {
    std::cerr << "scseg: " << e.stage << ": " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "scseg: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
