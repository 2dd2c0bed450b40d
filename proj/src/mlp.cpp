#include "maintlm/mlp.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "maintlm/error.hpp"
#include "maintlm/numfmt.hpp"
#include "maintlm/random.hpp"

namespace maintlm {
namespace {

constexpr const char* kModule = "mlp";

void require_samples(const std::vector<SamplePair>& samples) {
  if (samples.empty()) {
    throw Error(kModule, ErrorKind::kEmptyInput, "no samples to evaluate");
  }
}

[[noreturn]] void corrupt(const std::string& what) {
  throw Error(kModule, ErrorKind::kParse, "corrupt model file: " + what);
}

std::vector<double> parse_doubles(const std::string& line, const char* what) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= line.size()) {
    auto space = line.find(' ', start);
    if (space == std::string::npos) space = line.size();
    const auto value = parse_double(std::string_view(line).substr(start, space - start));
    if (!value) corrupt(std::string("bad number in ") + what);
    values.push_back(*value);
    start = space + 1;
  }
  return values;
}

}  // namespace

MlpModel::MlpModel(std::size_t hidden)
    : hidden_(hidden), params_(param_count_for(hidden), 0.0) {
  if (hidden == 0) {
    throw Error(kModule, ErrorKind::kInvalidArgument, "hidden layer needs at least one unit");
  }
}

MlpModel::MlpModel(std::size_t hidden, std::vector<double> params)
    : hidden_(hidden), params_(std::move(params)) {
  if (hidden == 0) {
    throw Error(kModule, ErrorKind::kInvalidArgument, "hidden layer needs at least one unit");
  }
  if (params_.size() != param_count_for(hidden)) {
    throw Error(kModule, ErrorKind::kLengthMismatch,
                "expected " + std::to_string(param_count_for(hidden)) + " parameters, got " +
                    std::to_string(params_.size()));
  }
  for (double p : params_) {
    if (!std::isfinite(p)) {
      throw Error(kModule, ErrorKind::kNonFinite, "non-finite model parameter");
    }
  }
}

MlpModel MlpModel::from_layers(std::span<const double> w1, std::span<const double> b1,
                               std::span<const double> w2, double b2) {
  if (w1.size() != b1.size() || w1.size() != w2.size()) {
    throw Error(kModule, ErrorKind::kLengthMismatch, "layer sizes disagree");
  }
  std::vector<double> p;
  p.reserve(param_count_for(w1.size()));
  p.insert(p.end(), w1.begin(), w1.end());
  p.insert(p.end(), b1.begin(), b1.end());
  p.insert(p.end(), w2.begin(), w2.end());
  p.push_back(b2);
  return MlpModel(w1.size(), std::move(p));
}

MlpModel MlpModel::with_params(std::vector<double> params) const {
  return MlpModel(hidden_, std::move(params));
}

MlpModel init_model(std::size_t hidden, std::uint64_t seed) {
  if (hidden == 0) {
    throw Error(kModule, ErrorKind::kInvalidArgument, "hidden layer needs at least one unit");
  }
  Rng rng(seed);
  std::vector<double> p(MlpModel::param_count_for(hidden));
  for (auto& v : p) v = rng.uniform(-0.5, 0.5);
  return MlpModel(hidden, std::move(p));
}

double forward(const MlpModel& model, double x) {
  if (!std::isfinite(x)) {
    throw Error(kModule, ErrorKind::kNonFinite, "non-finite network input");
  }
  const auto w1 = model.w1();
  const auto b1 = model.b1();
  const auto w2 = model.w2();
  double out = model.b2();
  for (std::size_t j = 0; j < model.hidden(); ++j) out += w2[j] * std::tanh(w1[j] * x + b1[j]);
  return out;
}

ResidualReport batch_residuals(const MlpModel& model, const std::vector<SamplePair>& samples) {
  require_samples(samples);
  ResidualReport report;
  report.residuals.reserve(samples.size());
  for (const auto& s : samples) {
    const double r = s.y - forward(model, s.x);
    report.residuals.push_back(r);
    report.sse += r * r;
  }
  report.mse = report.sse / static_cast<double>(samples.size());
  return report;
}

Eigen::MatrixXd jacobian(const MlpModel& model, const std::vector<SamplePair>& samples) {
  require_samples(samples);
  const std::size_t h = model.hidden();
  const auto w1 = model.w1();
  const auto b1 = model.b1();
  const auto w2 = model.w2();
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(samples.size()),
                      static_cast<Eigen::Index>(model.param_count()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = samples[i].x;
    const auto row = static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j < h; ++j) {
      const auto col = static_cast<Eigen::Index>(j);
      const double t = std::tanh(w1[j] * x + b1[j]);
      const double dz = -w2[j] * (1.0 - t * t);
      jac(row, col) = dz * x;
      jac(row, col + static_cast<Eigen::Index>(h)) = dz;
      jac(row, col + static_cast<Eigen::Index>(2 * h)) = -t;
    }
    jac(row, static_cast<Eigen::Index>(3 * h)) = -1.0;
  }
  return jac;
}

void save_model(std::ostream& out, const MlpModel& model, const NormParams& norm) {
  out << kModelMagic << '\n';
  out << "H=" << model.hidden() << '\n';
  out << format_double(norm.x_min) << ' ' << format_double(norm.x_max) << ' '
      << format_double(norm.y_min) << ' ' << format_double(norm.y_max) << '\n';
  const auto p = model.params();
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) out << ' ';
    out << format_double(p[k]);
  }
  out << '\n';
}

ModelFile load_model(std::istream& in) {
  std::string magic, hline, nline, pline;
  if (!std::getline(in, magic) || magic != kModelMagic) corrupt("missing header");
  if (!std::getline(in, hline) || hline.rfind("H=", 0) != 0) corrupt("missing H line");
  const auto h = parse_integer(std::string_view(hline).substr(2));
  if (!h || *h <= 0) corrupt("bad hidden count");
  if (!std::getline(in, nline)) corrupt("missing normalization line");
  if (!std::getline(in, pline)) corrupt("missing parameter line");

  const auto n = parse_doubles(nline, "normalization line");
  if (n.size() != 4) corrupt("normalization line needs 4 values");
  NormParams norm{n[0], n[1], n[2], n[3]};
  if (!(norm.x_min <= norm.x_max) || !(norm.y_min <= norm.y_max)) {
    corrupt("normalization range has min > max");
  }
  auto params = parse_doubles(pline, "parameter line");
  const auto hidden = static_cast<std::size_t>(*h);
  if (params.size() != MlpModel::param_count_for(hidden)) corrupt("parameter count mismatch");
  for (double p : params) {
    if (!std::isfinite(p)) corrupt("non-finite parameter");
  }
  return {MlpModel(hidden, std::move(params)), norm};
}

double predict_raw(const ModelFile& file, double x_raw) {
  const double xn = normalize(x_raw, file.norm.x_min, file.norm.x_max);
  return denormalize(forward(file.model, xn), file.norm.y_min, file.norm.y_max);
}

}  // namespace maintlm
