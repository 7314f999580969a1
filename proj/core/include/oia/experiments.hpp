// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#ifndef OIA_EXPERIMENTS_HPP
#define OIA_EXPERIMENTS_HPP

#include "oia/types.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oia {

enum class ExperimentId {
  ToFraction,           // opportunity fraction vs SNR, simulation against asymptote
  OiaVsZfbf,            // aligned precoding against the zero-forcing baseline
  UpaVsOpa,             // uniform against water-filled secondary allocation
  RateSurface,          // secondary rate over the (SNR1, SNR2) plane
  AsymptoteConvergence  // finite-size rates against large-system predictions
};

std::string_view to_string(ExperimentId id);
std::optional<ExperimentId> experiment_from_string(std::string_view name);

struct SnrGrid {
  double min_db = 0.0;
  double max_db = 40.0;
  double step_db = 2.0;
  std::vector<double> points() const;
};

struct ExperimentSpec {
  ExperimentId id = ExperimentId::ToFraction;
  std::optional<Dimensions> dims;          // explicit antenna counts override defaults
  std::optional<std::array<double, 4>> alphas;  // alpha11, alpha12, alpha21, alpha22
  int n_ref = 0;                           // reference receive antenna count, 0 = default
  SnrGrid snr;
  std::optional<SnrGrid> snr2;             // second axis of the rate surface
  int trials = 500;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  bool emit_plot_script = false;
  int threads = 0;                          // 0 = hardware concurrency

  void validate() const;                    // throws std::invalid_argument
  std::string canonical_string() const;     // deterministic one-line encoding
};

/// Column-oriented result rows plus '#' metadata (seed, spec, version).
/// Every mean column is immediately followed by its standard error, and every
/// row carries the trial count that produced it.
struct ResultTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

ResultTable run_to_fraction(const ExperimentSpec& spec);
ResultTable run_oia_vs_zfbf(const ExperimentSpec& spec);
ResultTable run_upa_vs_opa(const ExperimentSpec& spec);
ResultTable run_rate_surface(const ExperimentSpec& spec);
ResultTable run_asymptote_convergence(const ExperimentSpec& spec);
ResultTable run_experiment(const ExperimentSpec& spec);

/// Bit-exact CSV encoding: '#' metadata lines, a header row, then
/// comma-separated values at 17 significant digits with '.' decimals.
std::string csv_bytes(const ResultTable& table);

std::filesystem::path csv_path(const ExperimentSpec& spec);
std::string plot_script(const ExperimentSpec& spec);

/// Runs the experiment and writes CSV (and the plot script when requested)
/// under spec.out_dir; returns the table.  I/O failures are reported with the
/// offending path.
ResultTable run_and_write(const ExperimentSpec& spec);

std::string_view version_string();

}  // namespace oia

#endif  // OIA_EXPERIMENTS_HPP
