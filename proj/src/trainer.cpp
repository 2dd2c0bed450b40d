#include "maintlm/trainer.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <string>

#include <Eigen/Cholesky>

#include "maintlm/numfmt.hpp"

namespace maintlm {
namespace {

constexpr const char* kModule = "trainer";
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void bad_config(const std::string& what) {
  throw Error(kModule, ErrorKind::kInvalidArgument, "invalid training config: " + what);
}

// Normal-equation pieces for one linearization point, restricted to the
// trainable columns.
struct Linearization {
  Eigen::MatrixXd jtj;
  Eigen::VectorXd jtr;
  Eigen::Index first_col = 0;
};

Linearization linearize(const MlpModel& model, const std::vector<SamplePair>& samples,
                        Trainable trainable) {
  const Eigen::MatrixXd full = jacobian(model, samples);
  const auto report = batch_residuals(model, samples);
  const Eigen::Map<const Eigen::VectorXd> r(report.residuals.data(),
                                            static_cast<Eigen::Index>(report.residuals.size()));
  Linearization lin;
  lin.first_col =
      trainable == Trainable::kAll ? 0 : static_cast<Eigen::Index>(2 * model.hidden());
  const auto cols = full.cols() - lin.first_col;
  const auto jac = full.rightCols(cols);
  lin.jtj = jac.transpose() * jac;
  lin.jtr = jac.transpose() * r;
  return lin;
}

// Returns nullopt when the damped system cannot be solved or gives a
// non-finite step.
std::optional<MlpModel> damped_update(const MlpModel& model, const Linearization& lin,
                                      double mu) {
  Eigen::MatrixXd a = lin.jtj;
  a.diagonal().array() += mu;
  const Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) return std::nullopt;
  const Eigen::VectorXd delta = llt.solve(-lin.jtr);
  if (!delta.allFinite()) return std::nullopt;

  std::vector<double> p(model.params().begin(), model.params().end());
  for (Eigen::Index k = 0; k < delta.size(); ++k) {
    p[static_cast<std::size_t>(lin.first_col + k)] += delta[k];
  }
  for (double v : p) {
    if (!std::isfinite(v)) return std::nullopt;
  }
  return model.with_params(std::move(p));
}

double raw_mse(const MlpModel& model, const std::vector<SamplePair>& samples,
               const NormParams& norm) {
  if (samples.empty()) return kNaN;
  double sse = 0.0;
  for (const auto& s : samples) {
    const double target = denormalize(s.y, norm.y_min, norm.y_max);
    const double output = denormalize(forward(model, s.x), norm.y_min, norm.y_max);
    sse += (target - output) * (target - output);
  }
  return sse / static_cast<double>(samples.size());
}

}  // namespace

void validate(const TrainConfig& c) {
  if (!(c.mu0 > 0.0) || !std::isfinite(c.mu0)) bad_config("mu0 must be > 0");
  if (!(c.mu_inc > 1.0) || !std::isfinite(c.mu_inc)) bad_config("mu_inc must be > 1");
  if (!(c.mu_dec > 0.0 && c.mu_dec < 1.0)) bad_config("mu_dec must lie in (0, 1)");
  if (!(c.mu_max >= c.mu0)) bad_config("mu_max must be >= mu0");
  if (!(c.mu_min > 0.0 && c.mu_min <= c.mu0)) bad_config("mu_min must lie in (0, mu0]");
  if (c.max_epochs == 0) bad_config("max_epochs must be >= 1");
  if (c.max_fail == 0) bad_config("max_fail must be >= 1");
  if (!(c.min_grad >= 0.0)) bad_config("min_grad must be >= 0");
}

std::string_view stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::kMaxFail:
      return "MaxFail";
    case StopReason::kMinGrad:
      return "MinGrad";
    case StopReason::kMuOverflow:
      return "MuOverflow";
    case StopReason::kMaxEpochs:
      return "MaxEpochs";
  }
  return "MaxEpochs";
}

SingularSystemError::SingularSystemError(double mu)
    : Error(kModule, ErrorKind::kSingularSystem,
            "damped normal matrix is not positive definite at mu=" + format_double(mu)),
      mu_(mu) {}

LmStep lm_step(const MlpModel& model, const std::vector<SamplePair>& train_samples, double mu,
               Trainable trainable) {
  if (!(mu > 0.0)) throw Error(kModule, ErrorKind::kInvalidArgument, "mu must be > 0");
  const auto lin = linearize(model, train_samples, trainable);
  auto candidate = damped_update(model, lin, mu);
  if (!candidate) throw SingularSystemError(mu);
  const double sse = batch_residuals(*candidate, train_samples).sse;
  return {std::move(*candidate), sse};
}

double gradient_norm(const MlpModel& model, const std::vector<SamplePair>& samples) {
  return linearize(model, samples, Trainable::kAll).jtr.lpNorm<Eigen::Infinity>();
}

TrainResult train(const MlpModel& initial, const SplitSamples& samples, const NormParams& norm,
                  const TrainConfig& config, const EpochObserver& observer) {
  validate(config);
  if (samples.train.empty()) {
    throw Error(kModule, ErrorKind::kEmptyInput, "training split is empty");
  }
  const bool early_stopping = !samples.val.empty();

  MlpModel model = initial;
  double mu = config.mu0;
  double sse = batch_residuals(model, samples.train).sse;

  TrainResult result{model, 0, StopReason::kMaxEpochs, {}};
  double best_val = std::numeric_limits<double>::infinity();
  std::size_t fails = 0;

  auto record = [&](std::size_t epoch) {
    EpochTrace t{epoch,
                 raw_mse(model, samples.train, norm),
                 raw_mse(model, samples.val, norm),
                 raw_mse(model, samples.test, norm),
                 mu,
                 sse};
    if (!std::isfinite(t.train_sse) || !std::isfinite(t.mse_train) ||
        (early_stopping && !std::isfinite(t.mse_val)) ||
        (!samples.test.empty() && !std::isfinite(t.mse_test))) {
      throw Error(kModule, ErrorKind::kNonFinite,
                  "non-finite loss at epoch " + std::to_string(epoch));
    }
    result.traces.push_back(t);
    if (!early_stopping) {
      result.best_model = model;
      result.best_epoch = epoch;
    } else if (t.mse_val < best_val) {
      best_val = t.mse_val;
      result.best_model = model;
      result.best_epoch = epoch;
      fails = 0;
    } else {
      ++fails;
    }
    if (observer) observer(t, model);
  };

  record(0);
  for (std::size_t epoch = 1;; ++epoch) {
    if (early_stopping && fails >= config.max_fail) {
      result.stop_reason = StopReason::kMaxFail;
      break;
    }
    if (epoch > config.max_epochs) {
      result.stop_reason = StopReason::kMaxEpochs;
      break;
    }
    const auto lin = linearize(model, samples.train, Trainable::kAll);
    if (lin.jtr.lpNorm<Eigen::Infinity>() < config.min_grad) {
      result.stop_reason = StopReason::kMinGrad;
      break;
    }

    bool accepted = false;
    while (!accepted) {
      if (auto candidate = damped_update(model, lin, mu)) {
        const double candidate_sse = batch_residuals(*candidate, samples.train).sse;
        if (candidate_sse < sse) {
          model = std::move(*candidate);
          sse = candidate_sse;
          accepted = true;
          break;
        }
      }
      mu *= config.mu_inc;
      if (mu > config.mu_max) break;
    }
    if (!accepted) {
      result.stop_reason = StopReason::kMuOverflow;
      break;
    }
    mu = std::max(mu * config.mu_dec, config.mu_min);
    record(epoch);
  }
  return result;
}

TrainResult train(const MlpModel& initial, const SplitSamples& samples,
                  const TrainConfig& config, const EpochObserver& observer) {
  return train(initial, samples, NormParams{-1.0, 1.0, -1.0, 1.0}, config, observer);
}

void write_traces_csv(std::ostream& out, const std::vector<EpochTrace>& traces) {
  out << kTraceHeader << '\n';
  for (const auto& t : traces) {
    out << t.epoch << ',' << format_double(t.mse_train) << ',' << format_double(t.mse_val)
        << ',' << format_double(t.mse_test) << ',' << format_double(t.mu) << '\n';
  }
}

}  // namespace maintlm
