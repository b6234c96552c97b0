// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otfs/sim_config.hpp"

namespace otfs {

enum class ExperimentKind { OracleCheck, NmseModel, Estimate, Ber };

const char* to_string(ExperimentKind kind);

/// A resolved experiment request: base simulation setup plus sweep axes.
/// Sweep lists must be nonempty (a single config value counts as one point).
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::NmseModel;
  SimulationConfig sim;
  std::vector<double> snr_db_list;
  std::vector<double> velocity_kmh_list;
  std::vector<int> m_list;
  int trials = 100;
  std::uint64_t seed = 1;
  double gamma_sigma_mult = 3.0; // detection threshold in units of sigma_n
  bool full_scale = false;       // unlocks large-dimension BER runs
  unsigned threads = 1;
};

/// One sweep point of aggregated results. Metrics not produced by the
/// experiment kind are NaN. For kind=oracle-check, nmse_model carries the
/// maximum matrix-vs-oracle relative deviation over the trials (and its _se
/// is NaN).
struct ResultRow {
  int m = 0;
  int n = 0;
  double velocity_kmh = 0.0;
  double snr_db = 0.0;
  int trials = 0;
  double nmse_model, nmse_model_se;
  double nmse_est_dse, nmse_est_dse_se;
  double nmse_est_nodse, nmse_est_nodse_se;
  double ber_perfect_dse, ber_perfect_dse_se;
  double ber_perfect_nodse, ber_perfect_nodse_se;
  double ber_est_dse, ber_est_dse_se;
  double ber_est_nodse, ber_est_nodse_se;
};

/// Runs the experiment. Every sweep point's effective configuration is
/// validated before any trial runs. Trial t of any sweep point draws from
/// streams derived from (seed, t) only, so sweep points share channel/data
/// draws (common random numbers) and adding or removing points never changes
/// the others. Failed trials are excluded from aggregation and reported on
/// stderr; a sweep point with zero successful trials is an error.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

/// CSV with a fixed header (exactly the ResultRow field names, in declaration
/// order), one row per sweep point, full round-trip decimal precision,
/// "nan" for absent metrics.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
std::string csv_header();
std::vector<ResultRow> parse_csv(const std::string& path);

/// Writes a self-contained matplotlib script (Agg backend, no display) that
/// reads the given CSV and renders whichever metric columns are present.
void emit_plot_script(const std::string& script_path, const std::string& csv_path);

} // namespace otfs
