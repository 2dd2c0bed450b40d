#include "maintlm/pipeline.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "maintlm/dataset.hpp"
#include "maintlm/error.hpp"
#include "maintlm/numfmt.hpp"
#include "maintlm/report.hpp"

namespace maintlm {
namespace fs = std::filesystem;
namespace {

constexpr const char* kModule = "cli";

[[noreturn]] void io_error(const std::string& what) {
  throw Error("io", ErrorKind::kIo, what);
}

// Tracks files written during one command and deletes them unless the
// command finishes.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) io_error("cannot create output directory " + dir_.string() + ": " + ec.message());
  }
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;

  ~OutputSet() {
    if (committed_) return;
    for (const auto& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

  void write(const std::string& name, const std::string& contents) {
    const auto path = dir_ / name;
    written_.push_back(path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << contents;
    out.close();
    if (!out) io_error("cannot write " + path.string());
  }

  std::vector<fs::path> commit() {
    committed_ = true;
    return written_;
  }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
  bool committed_ = false;
};

std::optional<double> safe_pearson(const std::vector<double>& a, const std::vector<double>& b) {
  try {
    return pearson_r(a, b);
  } catch (const Error&) {
    return std::nullopt;
  }
}

template <typename T>
T manifest_number(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw Error(kModule, ErrorKind::kParse, "manifest is missing '" + key + "'");
  if constexpr (std::is_floating_point_v<T>) {
    const auto v = parse_double(it->second);
    if (!v) throw Error(kModule, ErrorKind::kParse, "manifest value for '" + key + "' is not a number");
    return *v;
  } else {
    const auto v = parse_integer(it->second);
    if (!v || *v < 0) {
      throw Error(kModule, ErrorKind::kParse,
                  "manifest value for '" + key + "' is not a nonnegative integer");
    }
    return static_cast<T>(*v);
  }
}

}  // namespace

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) io_error("cannot read " + path.string());
  return buf.str();
}

std::string manifest_text(const RunConfig& c) {
  std::map<std::string, std::string> kv;
  kv["bins"] = std::to_string(c.bins);
  kv["hidden"] = std::to_string(c.hidden);
  kv["init_seed"] = std::to_string(c.init_seed);
  kv["input"] = c.input_path.string();
  kv["max_epochs"] = std::to_string(c.train.max_epochs);
  kv["max_fail"] = std::to_string(c.train.max_fail);
  kv["min_grad"] = format_double(c.train.min_grad);
  kv["mu0"] = format_double(c.train.mu0);
  kv["mu_dec"] = format_double(c.train.mu_dec);
  kv["mu_inc"] = format_double(c.train.mu_inc);
  kv["mu_max"] = format_double(c.train.mu_max);
  kv["mu_min"] = format_double(c.train.mu_min);
  kv["split_seed"] = std::to_string(c.split_seed);
  kv["variant"] = std::string(variant_name(c.variant));
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

RunConfig parse_manifest(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(kModule, ErrorKind::kParse, "manifest line without '=': " + line);
    }
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  RunConfig c;
  const auto input = kv.find("input");
  if (input == kv.end()) throw Error(kModule, ErrorKind::kParse, "manifest is missing 'input'");
  c.input_path = input->second;
  const auto variant = kv.find("variant");
  if (variant == kv.end()) throw Error(kModule, ErrorKind::kParse, "manifest is missing 'variant'");
  c.variant = parse_variant(variant->second);
  c.bins = manifest_number<std::size_t>(kv, "bins");
  c.hidden = manifest_number<std::size_t>(kv, "hidden");
  c.init_seed = manifest_number<std::uint64_t>(kv, "init_seed");
  c.split_seed = manifest_number<std::uint64_t>(kv, "split_seed");
  c.train.max_epochs = manifest_number<std::size_t>(kv, "max_epochs");
  c.train.max_fail = manifest_number<std::size_t>(kv, "max_fail");
  c.train.min_grad = manifest_number<double>(kv, "min_grad");
  c.train.mu0 = manifest_number<double>(kv, "mu0");
  c.train.mu_dec = manifest_number<double>(kv, "mu_dec");
  c.train.mu_inc = manifest_number<double>(kv, "mu_inc");
  c.train.mu_max = manifest_number<double>(kv, "mu_max");
  c.train.mu_min = manifest_number<double>(kv, "mu_min");
  c.train.seed = c.init_seed;
  if (kv.size() != 14) {
    throw Error(kModule, ErrorKind::kParse, "manifest has unknown keys");
  }
  return c;
}

RunConfig read_manifest(const fs::path& path) { return parse_manifest(read_text_file(path)); }

TrainRunSummary cmd_train(const RunConfig& config) {
  const auto records = parse_change_log(read_text_file(config.input_path));
  const auto samples = build_samples(records, config.variant);
  const auto split = split_indices(samples.size(), config.split_seed);

  const auto train_raw = select(samples, split.train_idx);
  const NormParams norm = fit_normalization(train_raw);
  SplitSamples normalized{normalize_samples(train_raw, norm),
                          normalize_samples(select(samples, split.val_idx), norm),
                          normalize_samples(select(samples, split.test_idx), norm)};

  TrainConfig tc = config.train;
  tc.seed = config.init_seed;
  const auto result = train(init_model(config.hidden, config.init_seed), normalized, norm, tc);
  const ModelFile fitted{result.best_model, norm};

  std::vector<double> outputs(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) outputs[i] = predict_raw(fitted, samples[i].x);

  OutputSet out(config.out_dir);
  TrainRunSummary summary;
  summary.n = samples.size();
  summary.best_epoch = result.best_epoch;
  summary.stop_reason = result.stop_reason;

  {
    std::ostringstream model_text;
    save_model(model_text, fitted.model, norm);
    out.write(kModelFile, model_text.str());
  }
  {
    std::ostringstream traces;
    write_traces_csv(traces, result.traces);
    out.write(kTracesFile, traces.str());
  }
  out.write(kPerformancePlot, to_svg(performance_plot(result.traces, result.best_epoch)));

  struct Part {
    const char* name;
    const std::vector<std::size_t>* idx;
    std::optional<double>* r;
  };
  std::vector<std::size_t> all_idx(samples.size());
  for (std::size_t i = 0; i < all_idx.size(); ++i) all_idx[i] = i;
  const Part parts[] = {{"train", &split.train_idx, &summary.r_train},
                        {"val", &split.val_idx, &summary.r_val},
                        {"test", &split.test_idx, &summary.r_test},
                        {"all", &all_idx, &summary.r_all}};
  std::string predictions = "split,x,target,output\n";
  for (const auto& part : parts) {
    if (part.idx->empty()) continue;
    std::vector<double> targets, outs;
    for (auto i : *part.idx) {
      targets.push_back(samples[i].y);
      outs.push_back(outputs[i]);
      if (std::string(part.name) != "all") {
        predictions += std::string(part.name) + "," + format_double(samples[i].x) + "," +
                       format_double(samples[i].y) + "," + format_double(outputs[i]) + "\n";
      }
    }
    *part.r = safe_pearson(targets, outs);
    out.write(std::string("regression_") + part.name + ".svg",
              to_svg(regression_plot(targets, outs, part.name)));
  }
  out.write(kPredictionsFile, predictions);

  std::vector<double> errors(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) errors[i] = samples[i].y - outputs[i];
  out.write(kHistogramPlot, to_svg(histogram_plot(error_histogram(errors, config.bins))));

  RunConfig recorded = config;
  recorded.train = tc;
  out.write(kManifestFile, manifest_text(recorded));
  summary.files = out.commit();
  return summary;
}

RegressRunSummary cmd_regress(const fs::path& input_path, InputVariant variant,
                              const fs::path& out_dir, std::size_t bins) {
  const auto records = parse_change_log(read_text_file(input_path));
  const auto samples = build_samples(records, variant);
  std::vector<double> xs, ys;
  for (const auto& s : samples) {
    xs.push_back(s.x);
    ys.push_back(s.y);
  }
  RegressRunSummary result;
  result.summary = ols_fit(xs, ys);
  std::vector<double> residuals(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    residuals[i] = ys[i] - (result.summary.intercept + result.summary.slope * xs[i]);
  }
  const auto hist = error_histogram(residuals, bins);

  OutputSet out(out_dir);
  out.write(kSummaryFile, export_summary(result.summary));
  out.write(kOlsHistogramPlot, to_svg(histogram_plot(hist)));
  result.files = out.commit();
  return result;
}

double cmd_predict(const fs::path& model_path, double x) {
  std::istringstream in(read_text_file(model_path));
  return predict_raw(load_model(in), x);
}

std::string cmd_synth(const SynthSpec& spec) { return change_log_to_string(generate(spec)); }

}  // namespace maintlm
