// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#include "oia/experiments.hpp"

#include "oia/asymptotics.hpp"
#include "oia/link.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace oia {

namespace {

constexpr std::string_view kVersion = "0.1.0";

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr summarize(const std::vector<std::vector<double>>& samples, std::size_t column) {
  MeanStderr out;
  const std::size_t n = samples.size();
  if (n == 0) return out;
  double sum = 0.0;
  for (const auto& row : samples) sum += row[column];
  out.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (const auto& row : samples) {
      const double d = row[column] - out.mean;
      ss += d * d;
    }
    out.stderr_ = std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
  }
  return out;
}

/// Deterministic parallel trial runner: trial t always lands in slot t, so
/// the aggregate is independent of thread count and scheduling.
std::vector<std::vector<double>> run_trials(int trials, int threads,
                                            const std::function<std::vector<double>(int)>& fn) {
  std::vector<std::vector<double>> results(static_cast<std::size_t>(trials));
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, trials));
  if (threads == 1) {
    for (int t = 0; t < trials; ++t) results[static_cast<std::size_t>(t)] = fn(t);
    return results;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= trials) return;
      try {
        results[static_cast<std::size_t>(t)] = fn(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return results;
}

std::uint64_t stream_id(std::uint32_t grid_index, int trial) {
  return (static_cast<std::uint64_t>(grid_index) << 32) | static_cast<std::uint32_t>(trial);
}

void base_metadata(ResultTable& table, const ExperimentSpec& spec) {
  table.metadata.emplace_back("experiment", std::string(to_string(spec.id)));
  table.metadata.emplace_back("seed", std::to_string(spec.seed));
  const std::string canonical = spec.canonical_string();
  table.metadata.emplace_back("spec", canonical);
  char hash[17];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical)));
  table.metadata.emplace_back("spec-hash", hash);
  table.metadata.emplace_back("version", std::string(kVersion));
}

std::vector<Dimensions> default_square_configs(const ExperimentSpec& spec,
                                               std::initializer_list<int> sizes) {
  if (spec.dims) return {*spec.dims};
  std::vector<Dimensions> configs;
  for (int n : sizes) configs.emplace_back(n, n, n, n);
  return configs;
}

}  // namespace

std::string_view to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::ToFraction: return "to-fraction";
    case ExperimentId::OiaVsZfbf: return "oia-vs-zfbf";
    case ExperimentId::UpaVsOpa: return "upa-vs-opa";
    case ExperimentId::RateSurface: return "rate-surface";
    case ExperimentId::AsymptoteConvergence: return "asymptote-convergence";
  }
  return "unknown";
}

std::optional<ExperimentId> experiment_from_string(std::string_view name) {
  for (ExperimentId id : {ExperimentId::ToFraction, ExperimentId::OiaVsZfbf,
                          ExperimentId::UpaVsOpa, ExperimentId::RateSurface,
                          ExperimentId::AsymptoteConvergence}) {
    if (name == to_string(id)) return id;
  }
  return std::nullopt;
}

std::vector<double> SnrGrid::points() const {
  if (step_db <= 0.0) {
    if (min_db == max_db) return {min_db};
    throw std::invalid_argument("SnrGrid: step must be > 0 for a multi-point grid");
  }
  if (max_db < min_db) throw std::invalid_argument("SnrGrid: max below min");
  const int count = static_cast<int>(std::floor((max_db - min_db) / step_db + 1e-9)) + 1;
  std::vector<double> pts(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pts[static_cast<std::size_t>(i)] = min_db + i * step_db;
  return pts;
}

void ExperimentSpec::validate() const {
  if (trials < 1) throw std::invalid_argument("ExperimentSpec: trials must be >= 1");
  if (snr.points().empty()) throw std::invalid_argument("ExperimentSpec: empty SNR grid");
  if (snr2) snr2->points();
  if (n_ref < 0) throw std::invalid_argument("ExperimentSpec: n_ref must be >= 0");
  if (alphas) {
    for (double a : *alphas)
      if (!(a > 0.0)) throw std::invalid_argument("ExperimentSpec: ratios must be > 0");
  }
}

std::string ExperimentSpec::canonical_string() const {
  std::ostringstream s;
  s << "id=" << to_string(id);
  if (dims)
    s << " dims=" << dims->n1 << 'x' << dims->m1 << 'x' << dims->n2 << 'x' << dims->m2;
  if (alphas)
    s << " alphas=" << format_double((*alphas)[0]) << ',' << format_double((*alphas)[1]) << ','
      << format_double((*alphas)[2]) << ',' << format_double((*alphas)[3]);
  if (n_ref > 0) s << " n_ref=" << n_ref;
  s << " snr=" << format_double(snr.min_db) << ':' << format_double(snr.max_db) << ':'
    << format_double(snr.step_db);
  if (snr2)
    s << " snr2=" << format_double(snr2->min_db) << ':' << format_double(snr2->max_db) << ':'
      << format_double(snr2->step_db);
  s << " trials=" << trials << " seed=" << seed;
  return s.str();
}

ResultTable run_to_fraction(const ExperimentSpec& spec) {
  spec.validate();
  // (alpha11, n1) configurations; the classic sweep covers ratios 1/2, 1, 2.
  std::vector<std::pair<double, int>> configs;
  if (spec.dims) {
    configs.emplace_back(spec.dims->alpha11(), spec.dims->n1);
  } else {
    const int n_ref = spec.n_ref > 0 ? spec.n_ref : 10;
    std::vector<double> ratios = {0.5, 1.0, 2.0};
    if (spec.alphas) ratios = {(*spec.alphas)[0]};
    for (double a : ratios) configs.emplace_back(a, n_ref);
  }

  ResultTable table;
  base_metadata(table, spec);
  table.columns = {"alpha11", "n1",     "m1",    "snr_db",
                   "to_fraction", "to_fraction_stderr", "trials", "to_fraction_asymptotic"};

  std::uint32_t grid_index = 0;
  for (const auto& [alpha, n1] : configs) {
    const double m1_real = alpha * n1;
    const int m1 = static_cast<int>(std::lround(m1_real));
    if (std::abs(m1_real - m1) > 1e-9 || m1 < 1)
      throw std::invalid_argument("run_to_fraction: alpha11 * n1 must be a positive integer");
    for (double snr_db : spec.snr.points()) {
      const double p1_max = std::pow(10.0, snr_db / 10.0);
      const std::uint32_t g = grid_index++;
      auto samples = run_trials(spec.trials, spec.threads, [&, g](int t) {
        RandomStream rng(spec.seed, stream_id(g, t));
        const ComplexMatrix h11 = draw_channel(rng, n1, m1);
        // only the spectrum matters here; skip the full transceiver SVD
        const WaterfillSolution wf =
            waterfill(gram_channel_eigenvalues(h11), 1.0, m1 * p1_max);
        const int s = transmit_opportunities(n1, wf.m1);
        return std::vector<double>{static_cast<double>(s) / m1};
      });
      const MeanStderr frac = summarize(samples, 0);
      const double beta = asymptotic_waterlevel(alpha, p1_max, 1.0);
      const double s_inf = asymptotic_to_fraction(alpha, asymptotic_m1(alpha, beta, 1.0));
      table.rows.push_back({alpha, static_cast<double>(n1), static_cast<double>(m1), snr_db,
                            frac.mean, frac.stderr_, static_cast<double>(spec.trials), s_inf});
    }
  }
  return table;
}

namespace {

ResultTable run_rate_comparison(const ExperimentSpec& spec, std::vector<Dimensions> configs,
                                bool include_zfbf) {
  ResultTable table;
  base_metadata(table, spec);
  table.columns = {"n_r", "n_t", "snr_db", "rate_oia_upa", "rate_oia_upa_stderr",
                   "rate_oia_opa", "rate_oia_opa_stderr"};
  if (include_zfbf) {
    table.columns.insert(table.columns.end(),
                         {"rate_zfbf_upa", "rate_zfbf_upa_stderr", "rate_zfbf_opa",
                          "rate_zfbf_opa_stderr"});
  }
  table.columns.push_back("trials");

  std::uint32_t grid_index = 0;
  for (const Dimensions& dims : configs) {
    for (double snr_db : spec.snr.points()) {
      const LinkConfig config{dims, PowerNoiseConfig::from_snr_db(snr_db, snr_db)};
      const std::uint32_t g = grid_index++;
      auto samples = run_trials(spec.trials, spec.threads, [&, g](int t) {
        RandomStream rng(spec.seed, stream_id(g, t));
        const TrialResult r = simulate_trial(config, rng);
        return std::vector<double>{r.rate_oia_upa, r.rate_oia_opa, r.rate_zfbf_upa,
                                   r.rate_zfbf_opa};
      });
      std::vector<double> row = {static_cast<double>(dims.n1), static_cast<double>(dims.m1),
                                 snr_db};
      for (std::size_t c = 0; c < (include_zfbf ? 4u : 2u); ++c) {
        const MeanStderr m = summarize(samples, c);
        row.push_back(m.mean);
        row.push_back(m.stderr_);
      }
      row.push_back(static_cast<double>(spec.trials));
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace

ResultTable run_oia_vs_zfbf(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<Dimensions> configs;
  if (spec.dims) {
    configs.push_back(*spec.dims);
  } else {
    // n_t / n_r near 5/4 so the zero-forcing baseline stays feasible
    for (int nr : {3, 9}) {
      const int nt = (5 * nr + 3) / 4;  // ceil
      configs.emplace_back(nr, nt, nr, nt);
    }
  }
  return run_rate_comparison(spec, std::move(configs), true);
}

ResultTable run_upa_vs_opa(const ExperimentSpec& spec) {
  spec.validate();
  ResultTable table = run_rate_comparison(spec, default_square_configs(spec, {3, 6, 9}), false);
  // rename for the square sweep: only the aligned scheme is reported
  table.columns = {"n_r", "n_t", "snr_db", "rate_upa", "rate_upa_stderr",
                   "rate_opa", "rate_opa_stderr", "trials"};
  return table;
}

ResultTable run_rate_surface(const ExperimentSpec& spec) {
  spec.validate();
  const Dimensions dims = spec.dims.value_or(Dimensions(4, 4, 4, 4));
  const SnrGrid second = spec.snr2.value_or(spec.snr);

  ResultTable table;
  base_metadata(table, spec);
  table.columns = {"snr1_db", "snr2_db", "rate", "rate_stderr", "trials"};

  std::uint32_t grid_index = 0;
  for (double snr1_db : spec.snr.points()) {
    for (double snr2_db : second.points()) {
      const LinkConfig config{dims, PowerNoiseConfig::from_snr_db(snr1_db, snr2_db)};
      const std::uint32_t g = grid_index++;
      auto samples = run_trials(spec.trials, spec.threads, [&, g](int t) {
        RandomStream rng(spec.seed, stream_id(g, t));
        return std::vector<double>{simulate_trial(config, rng).rate_oia_opa};
      });
      const MeanStderr m = summarize(samples, 0);
      table.rows.push_back({snr1_db, snr2_db, m.mean, m.stderr_,
                            static_cast<double>(spec.trials)});
    }
  }
  return table;
}

ResultTable run_asymptote_convergence(const ExperimentSpec& spec) {
  spec.validate();
  const std::vector<Dimensions> configs = default_square_configs(spec, {4, 8, 16, 32, 64});

  ResultTable table;
  base_metadata(table, spec);
  table.columns = {"n_r",
                   "n_t",
                   "snr_db",
                   "secondary_rate_per_antenna",
                   "secondary_rate_stderr",
                   "secondary_rate_asymptotic",
                   "primary_rate_per_antenna",
                   "primary_rate_stderr",
                   "primary_rate_asymptotic",
                   "secondary_rel_gap",
                   "trials"};

  std::uint32_t grid_index = 0;
  for (const Dimensions& dims : configs) {
    for (double snr_db : spec.snr.points()) {
      const PowerNoiseConfig power = PowerNoiseConfig::from_snr_db(snr_db, snr_db);
      const LinkConfig config{dims, power};
      const std::uint32_t g = grid_index++;
      auto samples = run_trials(spec.trials, spec.threads, [&, g](int t) {
        RandomStream rng(spec.seed, stream_id(g, t));
        const TrialResult r = simulate_trial(config, rng);
        return std::vector<double>{r.rate_oia_upa / config.dims.n2,
                                   r.rate_primary / config.dims.n1};
      });
      const MeanStderr secondary = summarize(samples, 0);
      const MeanStderr primary = summarize(samples, 1);

      const AsymptoticModel model = AsymptoticModel::solve(dims, power);
      const double secondary_asym = asymptotic_upa_rate(model);
      const double primary_asym =
          asymptotic_primary_rate_per_tx(model.alpha11, model.beta_inf, power.sigma1_sq) *
          model.alpha11;
      const double gap = std::abs(secondary.mean - secondary_asym) /
                         std::max(secondary_asym, 1e-12);
      table.rows.push_back({static_cast<double>(dims.n1), static_cast<double>(dims.m1), snr_db,
                            secondary.mean, secondary.stderr_, secondary_asym, primary.mean,
                            primary.stderr_, primary_asym, gap,
                            static_cast<double>(spec.trials)});
    }
  }
  return table;
}

ResultTable run_experiment(const ExperimentSpec& spec) {
  switch (spec.id) {
    case ExperimentId::ToFraction: return run_to_fraction(spec);
    case ExperimentId::OiaVsZfbf: return run_oia_vs_zfbf(spec);
    case ExperimentId::UpaVsOpa: return run_upa_vs_opa(spec);
    case ExperimentId::RateSurface: return run_rate_surface(spec);
    case ExperimentId::AsymptoteConvergence: return run_asymptote_convergence(spec);
  }
  throw std::invalid_argument("run_experiment: unknown experiment id");
}

std::string csv_bytes(const ResultTable& table) {
  std::string out;
  for (const auto& [key, value] : table.metadata) {
    out += "# ";
    out += key;
    out += ": ";
    out += value;
    out += '\n';
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::filesystem::path csv_path(const ExperimentSpec& spec) {
  return std::filesystem::path(spec.out_dir) / (std::string(to_string(spec.id)) + ".csv");
}

std::string plot_script(const ExperimentSpec& spec) {
  const std::string csv = std::string(to_string(spec.id)) + ".csv";
  std::ostringstream s;
  s << "# gnuplot script generated by oia-lab " << kVersion << "\n"
    << "set datafile separator ','\n"
    << "set datafile commentschars '#'\n"
    << "set grid\n"
    << "set key outside\n";
  switch (spec.id) {
    case ExperimentId::ToFraction:
      s << "set xlabel 'SNR_1 (dB)'\nset ylabel 'transmit opportunities per antenna'\n"
        << "plot '" << csv << "' using 4:5:6 with yerrorlines title 'simulated', \\\n"
        << "     '" << csv << "' using 4:8 with lines title 'asymptotic'\n";
      break;
    case ExperimentId::OiaVsZfbf:
      s << "set xlabel 'SNR (dB)'\nset ylabel 'secondary rate (bits/s/Hz)'\n"
        << "plot '" << csv << "' using 3:4 with linespoints title 'aligned, uniform PA', \\\n"
        << "     '" << csv << "' using 3:6 with linespoints title 'aligned, optimal PA', \\\n"
        << "     '" << csv << "' using 3:8 with linespoints title 'zero-forcing, uniform PA', \\\n"
        << "     '" << csv << "' using 3:10 with linespoints title 'zero-forcing, optimal PA'\n";
      break;
    case ExperimentId::UpaVsOpa:
      s << "set xlabel 'SNR (dB)'\nset ylabel 'secondary rate (bits/s/Hz)'\n"
        << "plot '" << csv << "' using 3:4 with linespoints title 'uniform PA', \\\n"
        << "     '" << csv << "' using 3:6 with linespoints title 'optimal PA'\n";
      break;
    case ExperimentId::RateSurface:
      s << "set xlabel 'SNR_1 (dB)'\nset ylabel 'SNR_2 (dB)'\nset zlabel 'rate'\n"
        << "set dgrid3d\nset hidden3d\n"
        << "splot '" << csv << "' using 1:2:3 with lines title 'secondary rate'\n";
      break;
    case ExperimentId::AsymptoteConvergence:
      s << "set xlabel 'antennas'\nset ylabel 'rate per antenna (bits/s/Hz)'\nset logscale x 2\n"
        << "plot '" << csv << "' using 1:4:5 with yerrorlines title 'secondary, simulated', \\\n"
        << "     '" << csv << "' using 1:6 with lines title 'secondary, asymptotic', \\\n"
        << "     '" << csv << "' using 1:7:8 with yerrorlines title 'primary, simulated', \\\n"
        << "     '" << csv << "' using 1:9 with lines title 'primary, asymptotic'\n";
      break;
  }
  return s.str();
}

ResultTable run_and_write(const ExperimentSpec& spec) {
  ResultTable table = run_experiment(spec);
  std::error_code ec;
  std::filesystem::create_directories(spec.out_dir, ec);
  if (ec)
    throw std::runtime_error("run_and_write: cannot create output directory '" + spec.out_dir +
                             "': " + ec.message());
  const std::filesystem::path path = csv_path(spec);
  {
    std::ofstream file(path, std::ios::binary);
    file << csv_bytes(table);
    if (!file)
      throw std::runtime_error("run_and_write: failed writing '" + path.string() + "'");
  }
  if (spec.emit_plot_script) {
    const std::filesystem::path gp =
        std::filesystem::path(spec.out_dir) / (std::string(to_string(spec.id)) + ".gp");
    std::ofstream file(gp, std::ios::binary);
    file << plot_script(spec);
    if (!file) throw std::runtime_error("run_and_write: failed writing '" + gp.string() + "'");
  }
  return table;
}

std::string_view version_string() { return kVersion; }

}  // namespace oia
