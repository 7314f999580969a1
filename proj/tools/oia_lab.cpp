// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.
//
// Command line front end: one subcommand per experiment, CSV output plus an
// optional gnuplot script.  Exit codes: 0 success, 1 invalid specification or
// I/O failure, 2 numerical failure (the failing operation is named on stderr).

#include "oia/experiments.hpp"
#include "oia/types.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct CliOptions {
  int n1 = 0, m1 = 0, n2 = 0, m2 = 0;
  double alpha11 = 0.0, alpha12 = 0.0, alpha21 = 0.0, alpha22 = 0.0;
  int n_ref = 0;
  double snr_min = 0.0, snr_max = 40.0, snr_step = 2.0;
  double snr2_min = 0.0, snr2_max = -1.0, snr2_step = 0.0;  // max < min means "mirror snr"
  int trials = 500;
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string out_dir = ".";
  bool emit_plot_script = false;
  int threads = 0;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--n1", opt.n1, "Primary receive antennas");
  cmd->add_option("--m1", opt.m1, "Primary transmit antennas");
  cmd->add_option("--n2", opt.n2, "Secondary receive antennas");
  cmd->add_option("--m2", opt.m2, "Secondary transmit antennas");
  cmd->add_option("--alpha11", opt.alpha11, "Ratio m1/n1 for ratio-mode experiments");
  cmd->add_option("--alpha12", opt.alpha12, "Ratio m2/n1");
  cmd->add_option("--alpha21", opt.alpha21, "Ratio m1/n2");
  cmd->add_option("--alpha22", opt.alpha22, "Ratio m2/n2");
  cmd->add_option("--n-ref", opt.n_ref, "Reference receive antenna count for ratio mode");
  cmd->add_option("--snr-min", opt.snr_min, "SNR grid start (dB)");
  cmd->add_option("--snr-max", opt.snr_max, "SNR grid end (dB)");
  cmd->add_option("--snr-step", opt.snr_step, "SNR grid step (dB)");
  cmd->add_option("--snr2-min", opt.snr2_min, "Second SNR axis start (rate-surface)");
  cmd->add_option("--snr2-max", opt.snr2_max, "Second SNR axis end (rate-surface)");
  cmd->add_option("--snr2-step", opt.snr2_step, "Second SNR axis step (rate-surface)");
  cmd->add_option("--trials", opt.trials, "Monte Carlo trials per grid point");
  cmd->add_option("--seed", opt.seed, "RNG seed (overrides OIA_SEED)")
      ->each([&opt](const std::string&) { opt.seed_given = true; });
  cmd->add_option("--out", opt.out_dir, "Output directory");
  cmd->add_flag("--emit-plot-script", opt.emit_plot_script, "Also write a gnuplot script");
  cmd->add_option("--threads", opt.threads, "Worker threads (0 = hardware)");
}

oia::ExperimentSpec build_spec(oia::ExperimentId id, const CliOptions& opt) {
  oia::ExperimentSpec spec;
  spec.id = id;

  const bool any_dim = opt.n1 || opt.m1 || opt.n2 || opt.m2;
  if (any_dim) {
    if (!(opt.n1 && opt.m1 && opt.n2 && opt.m2))
      throw std::invalid_argument("all of --n1 --m1 --n2 --m2 must be given together");
    spec.dims = oia::Dimensions(opt.n1, opt.m1, opt.n2, opt.m2);
  }
  const bool any_alpha = opt.alpha11 > 0.0 || opt.alpha12 > 0.0 || opt.alpha21 > 0.0 ||
                         opt.alpha22 > 0.0;
  if (any_alpha) {
    if (any_dim)
      throw std::invalid_argument("give either explicit antenna counts or ratios, not both");
    const double a11 = opt.alpha11 > 0.0 ? opt.alpha11 : 1.0;
    spec.alphas = {a11, opt.alpha12 > 0.0 ? opt.alpha12 : a11,
                   opt.alpha21 > 0.0 ? opt.alpha21 : a11,
                   opt.alpha22 > 0.0 ? opt.alpha22 : a11};
  }
  spec.n_ref = opt.n_ref;
  spec.snr = {opt.snr_min, opt.snr_max, opt.snr_step};
  if (opt.snr2_max >= opt.snr2_min && opt.snr2_step > 0.0)
    spec.snr2 = oia::SnrGrid{opt.snr2_min, opt.snr2_max, opt.snr2_step};
  spec.trials = opt.trials;

  spec.seed = opt.seed;
  if (!opt.seed_given) {
    if (const char* env = std::getenv("OIA_SEED")) {
      try {
        spec.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw std::invalid_argument("OIA_SEED is not a valid unsigned integer");
      }
    }
  }
  spec.out_dir = opt.out_dir;
  spec.emit_plot_script = opt.emit_plot_script;
  spec.threads = opt.threads;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oia-lab: Monte Carlo experiments for opportunistic spatial reuse in "
               "two-link MIMO interference channels"};
  app.require_subcommand(1);

  struct Entry {
    oia::ExperimentId id;
    const char* help;
  };
  const Entry entries[] = {
      {oia::ExperimentId::ToFraction,
       "Transmit-opportunity fraction vs SNR against the large-system prediction"},
      {oia::ExperimentId::OiaVsZfbf,
       "Aligned precoding vs the zero-forcing baseline (uniform and optimal PA)"},
      {oia::ExperimentId::UpaVsOpa, "Uniform vs water-filled secondary power allocation"},
      {oia::ExperimentId::RateSurface, "Secondary rate over the (SNR1, SNR2) plane"},
      {oia::ExperimentId::AsymptoteConvergence,
       "Finite-size per-antenna rates against the large-system asymptotes"},
  };

  CliOptions opt;
  for (const Entry& e : entries) {
    CLI::App* cmd = app.add_subcommand(std::string(oia::to_string(e.id)), e.help);
    if (e.id == oia::ExperimentId::AsymptoteConvergence) {
      // heavier per trial; a compact SNR set and fewer trials by default
      cmd->preparse_callback([&opt](std::size_t) {
        opt.snr_min = 0.0;
        opt.snr_max = 20.0;
        opt.snr_step = 10.0;
        opt.trials = 100;
      });
    }
    add_common_flags(cmd, opt);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const oia::ExperimentId id = oia::experiment_from_string(
        app.get_subcommands().front()->get_name()).value();
    const oia::ExperimentSpec spec = build_spec(id, opt);
    const oia::ResultTable table = oia::run_and_write(spec);
    std::cout << "wrote " << oia::csv_path(spec).string() << " (" << table.rows.size()
              << " rows)\n";
    if (spec.emit_plot_script)
      std::cout << "wrote " << (std::filesystem::path(spec.out_dir) /
                                (std::string(oia::to_string(spec.id)) + ".gp"))
                       .string()
                << '\n';
    return 0;
  } catch (const oia::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
