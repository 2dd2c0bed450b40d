#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "maintlm/dataset.hpp"
#include "maintlm/error.hpp"
#include "maintlm/mlp.hpp"

namespace maintlm {

struct TrainConfig {
  double mu0 = 1e-3;
  double mu_inc = 10.0;
  double mu_dec = 0.1;
  double mu_max = 1e10;
  // Floor applied after each decrease so repeated acceptances cannot drive the
  // damping to zero.
  double mu_min = 1e-20;
  std::size_t max_epochs = 1000;
  std::size_t max_fail = 6;
  double min_grad = 1e-7;
  // Seed for the initial weights when training starts from init_model.
  std::uint64_t seed = 0;
};

void validate(const TrainConfig& config);

enum class StopReason { kMaxFail, kMinGrad, kMuOverflow, kMaxEpochs };
std::string_view stop_reason_name(StopReason reason);

// Per-epoch record. MSEs are in raw (denormalized) target units; an empty
// split is reported as NaN. Epoch 0 is the state before any update.
struct EpochTrace {
  std::size_t epoch = 0;
  double mse_train = 0.0;
  double mse_val = 0.0;
  double mse_test = 0.0;
  double mu = 0.0;
  // Training objective in normalized units (what LM actually minimizes).
  double train_sse = 0.0;
};

struct TrainResult {
  MlpModel best_model;
  std::size_t best_epoch = 0;
  StopReason stop_reason = StopReason::kMaxEpochs;
  std::vector<EpochTrace> traces;
};

// Normalized samples for each partition. val/test may be empty; without a
// validation set early stopping is disabled and the final model is returned.
struct SplitSamples {
  std::vector<SamplePair> train;
  std::vector<SamplePair> val;
  std::vector<SamplePair> test;
};

// Raised when the damped normal matrix cannot be factored; the caller should
// raise mu and retry.
class SingularSystemError : public Error {
 public:
  explicit SingularSystemError(double mu);
  double mu() const noexcept { return mu_; }

 private:
  double mu_;
};

enum class Trainable { kAll, kOutputLayer };

struct LmStep {
  MlpModel candidate;
  double candidate_sse = 0.0;
};

// One damped Gauss-Newton step on the training SSE. Solves
// (J'J + mu I) delta = -J' r with J = d(residual)/d(param) by Cholesky.
// With Trainable::kOutputLayer only w2 and b2 move.
LmStep lm_step(const MlpModel& model, const std::vector<SamplePair>& train_samples, double mu,
               Trainable trainable = Trainable::kAll);

// Infinity norm of J' r, the (half) gradient of the SSE.
double gradient_norm(const MlpModel& model, const std::vector<SamplePair>& samples);

// Invoked after each recorded epoch with the trace and the model of that epoch.
using EpochObserver = std::function<void(const EpochTrace&, const MlpModel&)>;

TrainResult train(const MlpModel& initial, const SplitSamples& samples, const NormParams& norm,
                  const TrainConfig& config, const EpochObserver& observer = {});

// Same, with identity normalization: raw units equal the sample units.
TrainResult train(const MlpModel& initial, const SplitSamples& samples,
                  const TrainConfig& config, const EpochObserver& observer = {});

inline constexpr std::string_view kTraceHeader = "epoch,mse_train,mse_val,mse_test,mu";
void write_traces_csv(std::ostream& out, const std::vector<EpochTrace>& traces);

}  // namespace maintlm
