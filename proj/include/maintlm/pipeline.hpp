#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maintlm/ingest.hpp"
#include "maintlm/mlp.hpp"
#include "maintlm/stats.hpp"
#include "maintlm/synth.hpp"
#include "maintlm/trainer.hpp"

namespace maintlm {

// Everything needed to reproduce a training run. The output directory is not
// part of the manifest so a run can be replayed elsewhere.
struct RunConfig {
  std::filesystem::path input_path;
  InputVariant variant = InputVariant::kSum;
  std::size_t hidden = kDefaultHidden;
  std::uint64_t split_seed = 1;
  std::uint64_t init_seed = 1;
  TrainConfig train;
  std::size_t bins = kDefaultBins;
  std::filesystem::path out_dir = "out";
};

inline constexpr const char* kManifestFile = "manifest.txt";
inline constexpr const char* kModelFile = "model.txt";
inline constexpr const char* kTracesFile = "traces.csv";
inline constexpr const char* kPredictionsFile = "predictions.csv";
inline constexpr const char* kPerformancePlot = "performance.svg";
inline constexpr const char* kHistogramPlot = "errhist.svg";
inline constexpr const char* kSummaryFile = "summary.csv";
inline constexpr const char* kOlsHistogramPlot = "errhist_ols.svg";

// key=value lines sorted by key.
std::string manifest_text(const RunConfig& config);
RunConfig parse_manifest(const std::string& text);
RunConfig read_manifest(const std::filesystem::path& path);

struct TrainRunSummary {
  std::size_t n = 0;
  std::size_t best_epoch = 0;
  StopReason stop_reason = StopReason::kMaxEpochs;
  // Pearson R of network outputs against targets, raw units. Missing when
  // the split is too small or constant.
  std::optional<double> r_all, r_train, r_val, r_test;
  std::vector<std::filesystem::path> files;
};

// Full pipeline: ingest, split, normalize, train, and write the model,
// traces, predictions, plots and manifest into config.out_dir. On failure the
// files written so far are removed and the error is rethrown.
TrainRunSummary cmd_train(const RunConfig& config);

struct RegressRunSummary {
  RegressionSummary summary;
  std::vector<std::filesystem::path> files;
};

RegressRunSummary cmd_regress(const std::filesystem::path& input_path, InputVariant variant,
                              const std::filesystem::path& out_dir,
                              std::size_t bins = kDefaultBins);

double cmd_predict(const std::filesystem::path& model_path, double x);

// Synthetic change log as CSV text.
std::string cmd_synth(const SynthSpec& spec);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace maintlm
