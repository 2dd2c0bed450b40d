#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "maintlm/dataset.hpp"
#include "maintlm/ingest.hpp"

namespace maintlm {

inline constexpr std::size_t kDefaultHidden = 10;

// Single-input, single-output network with one tanh hidden layer and a linear
// output unit:
//
//   forward(x) = b2 + sum_j w2[j] * tanh(w1[j] * x + b1[j])
//
// Parameters are stored flat in the order w1[0..H), b1[0..H), w2[0..H), b2.
class MlpModel {
 public:
  // All-zero network.
  explicit MlpModel(std::size_t hidden);
  // Takes a flat parameter vector of length 3H + 1; all entries must be finite.
  MlpModel(std::size_t hidden, std::vector<double> params);

  static MlpModel from_layers(std::span<const double> w1, std::span<const double> b1,
                              std::span<const double> w2, double b2);

  static constexpr std::size_t param_count_for(std::size_t hidden) { return 3 * hidden + 1; }

  std::size_t hidden() const { return hidden_; }
  std::size_t param_count() const { return params_.size(); }
  std::span<const double> params() const { return params_; }

  std::span<const double> w1() const { return {params_.data(), hidden_}; }
  std::span<const double> b1() const { return {params_.data() + hidden_, hidden_}; }
  std::span<const double> w2() const { return {params_.data() + 2 * hidden_, hidden_}; }
  double b2() const { return params_.back(); }

  // Copy of this model with a different parameter vector.
  MlpModel with_params(std::vector<double> params) const;

  friend bool operator==(const MlpModel&, const MlpModel&) = default;

 private:
  std::size_t hidden_;
  std::vector<double> params_;
};

// Parameters drawn independently from the seeded uniform [-0.5, 0.5].
MlpModel init_model(std::size_t hidden, std::uint64_t seed);

double forward(const MlpModel& model, double x);

struct ResidualReport {
  std::vector<double> residuals;  // target - output
  double sse = 0.0;
  double mse = 0.0;
};

ResidualReport batch_residuals(const MlpModel& model, const std::vector<SamplePair>& samples);

// n x P matrix of d(residual_i)/d(param_k), columns in flat parameter order.
Eigen::MatrixXd jacobian(const MlpModel& model, const std::vector<SamplePair>& samples);

// Text model file: header, H, normalization ranges, parameters. Every double is
// written in shortest round-trip form so load reproduces the bits.
struct ModelFile {
  MlpModel model;
  NormParams norm;
};

inline constexpr const char* kModelMagic = "maintlm-model v1";

void save_model(std::ostream& out, const MlpModel& model, const NormParams& norm);
ModelFile load_model(std::istream& in);

// Maps a raw input through the network and back to raw target units.
double predict_raw(const ModelFile& file, double x_raw);

}  // namespace maintlm
