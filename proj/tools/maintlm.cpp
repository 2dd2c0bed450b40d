// Command-line front end: train, regress, predict, synth.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "maintlm/error.hpp"
#include "maintlm/numfmt.hpp"
#include "maintlm/pipeline.hpp"
#include "maintlm/report.hpp"

namespace {

using maintlm::InputVariant;

const std::map<std::string, InputVariant> kVariants = {
    {"sum", InputVariant::kSum},
    {"enh", InputVariant::kEnhancementsOnly},
    {"corr", InputVariant::kCorrectionsOnly}};

int fail(const std::string& module, const std::string& message) {
  std::cerr << "maintlm: " << module << ": " << message << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maintenance-time prediction with a Levenberg-Marquardt trained network"};
  app.require_subcommand(1);

  // train
  maintlm::RunConfig run;
  std::string manifest_path;
  auto* train = app.add_subcommand("train", "Train the network and write plots and artifacts");
  train->add_option("--input", run.input_path, "Change-log CSV");
  train->add_option("--manifest", manifest_path,
                    "Replay a previous run's manifest (other flags are ignored)");
  train->add_option("--variant", run.variant, "Input variant: sum|enh|corr")
      ->transform(CLI::CheckedTransformer(kVariants, CLI::ignore_case));
  train->add_option("--hidden", run.hidden, "Hidden units")->check(CLI::PositiveNumber);
  train->add_option("--seed-split", run.split_seed, "Seed for the 70/15/15 split");
  train->add_option("--seed-init", run.init_seed, "Seed for the initial weights");
  train->add_option("--mu0", run.train.mu0, "Initial damping");
  train->add_option("--mu-inc", run.train.mu_inc, "Damping increase factor");
  train->add_option("--mu-dec", run.train.mu_dec, "Damping decrease factor");
  train->add_option("--mu-max", run.train.mu_max, "Damping ceiling");
  train->add_option("--mu-min", run.train.mu_min, "Damping floor");
  train->add_option("--max-epochs", run.train.max_epochs, "Epoch limit");
  train->add_option("--max-fail", run.train.max_fail,
                    "Consecutive validation failures before stopping");
  train->add_option("--min-grad", run.train.min_grad, "Gradient norm stopping threshold");
  train->add_option("--bins", run.bins, "Error histogram bins")->check(CLI::PositiveNumber);
  train->add_option("--out", run.out_dir, "Output directory")->required();

  // regress
  std::string regress_input;
  InputVariant regress_variant = InputVariant::kSum;
  std::string regress_out = "out";
  std::size_t regress_bins = maintlm::kDefaultBins;
  auto* regress = app.add_subcommand("regress", "Ordinary least-squares summary of days on counts");
  regress->add_option("--input", regress_input, "Change-log CSV")->required();
  regress->add_option("--variant", regress_variant, "Input variant: sum|enh|corr")
      ->transform(CLI::CheckedTransformer(kVariants, CLI::ignore_case));
  regress->add_option("--bins", regress_bins, "Residual histogram bins")
      ->check(CLI::PositiveNumber);
  regress->add_option("--out", regress_out, "Output directory");

  // predict
  std::string model_path;
  double x = 0.0;
  auto* predict = app.add_subcommand("predict", "Predict maintenance days for a count");
  predict->add_option("--model", model_path, "Model file written by train")->required();
  predict->add_option("--x", x, "Maintenance count")->required();

  // synth
  maintlm::SynthSpec spec;
  std::optional<double> rho;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic change log");
  synth->add_option("--n", spec.n, "Number of records");
  synth->add_option("--e-min", spec.e_range.lo, "Smallest enhancement count");
  synth->add_option("--e-max", spec.e_range.hi, "Largest enhancement count");
  synth->add_option("--f-min", spec.f_range.lo, "Smallest correction count");
  synth->add_option("--f-max", spec.f_range.hi, "Largest correction count");
  synth->add_option("--days-per-unit", spec.days_per_unit, "Mean days per maintenance item");
  auto* sigma_opt = synth->add_option("--noise-sigma", spec.noise_sigma,
                                      "Gaussian noise on each day count");
  synth->add_option("--rho", rho, "Target input/output correlation (sets the noise)")
      ->excludes(sigma_opt);
  synth->add_option("--seed", spec.seed, "Random seed");
  synth->add_option("--out", synth_out, "Output CSV (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    const auto newline = message.find('\n');
    if (newline != std::string::npos) message.resize(newline);
    return fail("cli", message);
  }

  try {
    if (*train) {
      if (!manifest_path.empty()) {
        const auto out_dir = run.out_dir;
        run = maintlm::read_manifest(manifest_path);
        run.out_dir = out_dir;
      } else if (run.input_path.empty()) {
        return fail("cli", "train needs --input or --manifest");
      }
      const auto s = maintlm::cmd_train(run);
      auto show = [](const std::optional<double>& r) {
        return r ? maintlm::format_fixed(*r, 4) : std::string("n/a");
      };
      std::cout << "n=" << s.n << " best_epoch=" << s.best_epoch
                << " stop=" << maintlm::stop_reason_name(s.stop_reason)
                << " R_all=" << show(s.r_all) << " R_train=" << show(s.r_train)
                << " R_val=" << show(s.r_val) << " R_test=" << show(s.r_test) << '\n';
    } else if (*regress) {
      const auto r = maintlm::cmd_regress(regress_input, regress_variant, regress_out,
                                          regress_bins);
      std::cout << maintlm::export_summary(r.summary);
    } else if (*predict) {
      std::cout << maintlm::format_double(maintlm::cmd_predict(model_path, x)) << '\n';
    } else if (*synth) {
      if (rho) spec.noise_sigma = maintlm::noise_sigma_for_correlation(spec, *rho);
      const auto csv = maintlm::cmd_synth(spec);
      if (synth_out.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(synth_out, std::ios::binary | std::ios::trunc);
        out << csv;
        out.close();
        if (!out) return fail("io", "cannot write " + synth_out);
      }
    }
  } catch (const maintlm::Error& e) {
    return fail(e.module(), e.what());
  } catch (const std::exception& e) {
    return fail("cli", e.what());
  }
  return 0;
}
