// SPDX-License-Identifier: MIT
#include "otfs/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "otfs/channel.hpp"
#include "otfs/equalizer.hpp"
#include "otfs/estimator.hpp"
#include "otfs/metrics.hpp"
#include "otfs/modem.hpp"
#include "otfs/parallel.hpp"

namespace otfs {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
// An equalization pass costs ~trials * branches * N * M^3; beyond this the
// run takes hours on one core and must be requested explicitly.
constexpr double kFullScaleGate = 1e12;

struct SweepPoint {
  int m = 0;
  double velocity_kmh = 0.0;
  double snr_db = 0.0;
  FrameConfig cfg;
};

ResultRow blank_row(const SweepPoint& pt) {
  ResultRow row;
  row.m = pt.m;
  row.n = pt.cfg.num_data_symbols;
  row.velocity_kmh = pt.velocity_kmh;
  row.snr_db = pt.snr_db;
  row.trials = 0;
  row.nmse_model = row.nmse_model_se = kNan;
  row.nmse_est_dse = row.nmse_est_dse_se = kNan;
  row.nmse_est_nodse = row.nmse_est_nodse_se = kNan;
  row.ber_perfect_dse = row.ber_perfect_dse_se = kNan;
  row.ber_perfect_nodse = row.ber_perfect_nodse_se = kNan;
  row.ber_est_dse = row.ber_est_dse_se = kNan;
  row.ber_est_nodse = row.ber_est_nodse_se = kNan;
  return row;
}

std::vector<std::uint8_t> random_bits(RngStream& rng, int count) {
  std::vector<std::uint8_t> bits(count);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.uniform_int(0, 1));
  return bits;
}

/// Received frame rows [0, n_rows) through the continuous-time channel
/// superposition, plus noise. Receivers only ever see this route; the tap
/// matrices enter as their model of it. The noise substream of row n depends
/// only on (seed, trial, n).
CMat noisy_receive(const TransmitFrame& frame, const ChannelRealization& channel,
                   int n_rows, double noise_power, std::uint64_t noise_seed) {
  CMat rx = oracle_receive_rows(frame, channel, 0, n_rows);
  add_awgn(rx, noise_power, noise_seed);
  return rx;
}

/// Per-trial metric values, in the order the aggregation step consumes them.
using TrialMetrics = std::vector<double>;

TrialMetrics run_trial(const ExperimentSpec& spec, const SweepPoint& pt,
                       std::uint64_t trial) {
  const FrameConfig& cfg = pt.cfg;
  const double v_mps = pt.velocity_kmh / 3.6;
  const int last = cfg.num_symbols() - 1; // deepest phase progression

  RngStream channel_rng(trial_stream_seed(spec.seed, trial, kChannelStreamId));
  const ChannelRealization channel =
      jakes_channel(cfg, v_mps, spec.sim.n_paths, channel_rng);
  const std::uint64_t noise_seed = trial_stream_seed(spec.seed, trial, kNoiseStreamId);
  const double gamma = spec.gamma_sigma_mult * std::sqrt(cfg.noise_power);

  switch (spec.kind) {
    case ExperimentKind::OracleCheck: {
      RngStream data_rng(trial_stream_seed(spec.seed, trial, kDataStreamId));
      const CMat dd = qpsk_map(random_bits(data_rng, cfg.bits_per_frame()), cfg);
      const TransmitFrame frame = TransmitFrame::from_delay_doppler(cfg, dd);
      return {matrix_vs_oracle_deviation(frame, channel)};
    }
    case ExperimentKind::NmseModel: {
      const CMat aware = channel_matrix(channel, cfg, last, SquintMode::Aware);
      const CMat ignorant = channel_matrix(channel, cfg, last, SquintMode::Ignorant);
      return {nmse(ignorant, aware)};
    }
    case ExperimentKind::Estimate: {
      const TransmitFrame frame =
          TransmitFrame::from_delay_doppler(cfg, CMat::Zero(cfg.num_data_symbols,
                                                            cfg.num_subcarriers));
      const CMat rx = noisy_receive(frame, channel, 2, cfg.noise_power, noise_seed);
      const CMat reference = channel_matrix(channel, cfg, last, SquintMode::Aware);
      const EstimatedCsi aware = estimate_channel(rx, cfg, gamma, SquintMode::Aware);
      const EstimatedCsi ignorant = estimate_channel(rx, cfg, gamma, SquintMode::Ignorant);
      return {nmse(reconstruct(aware, cfg, last), reference),
              nmse(reconstruct(ignorant, cfg, last), reference)};
    }
    case ExperimentKind::Ber: {
      RngStream data_rng(trial_stream_seed(spec.seed, trial, kDataStreamId));
      const std::vector<std::uint8_t> bits = random_bits(data_rng, cfg.bits_per_frame());
      const TransmitFrame frame = TransmitFrame::from_delay_doppler(cfg, qpsk_map(bits, cfg));
      const CMat rx = noisy_receive(frame, channel, cfg.num_symbols(),
                                    cfg.noise_power, noise_seed);
      TrialMetrics out;
      out.reserve(4);
      for (const EstimatedCsi& csi :
           {perfect_csi(channel, SquintMode::Aware), perfect_csi(channel, SquintMode::Ignorant),
            estimate_channel(rx, cfg, gamma, SquintMode::Aware),
            estimate_channel(rx, cfg, gamma, SquintMode::Ignorant)})
        out.push_back(bit_error_rate(bits, detect_frame(rx, csi, cfg, 1)));
      return out;
    }
  }
  throw std::logic_error("run_trial: unknown experiment kind");
}

void aggregate(const ExperimentKind kind, const std::vector<TrialMetrics>& metrics,
               ResultRow& row) {
  const auto column = [&](std::size_t j) {
    std::vector<double> col;
    col.reserve(metrics.size());
    for (const auto& m : metrics) col.push_back(m.at(j));
    return col;
  };
  switch (kind) {
    case ExperimentKind::OracleCheck: {
      double worst = 0.0;
      for (const auto& m : metrics) worst = std::max(worst, m.at(0));
      row.nmse_model = worst; // max deviation; no spread statistic
      break;
    }
    case ExperimentKind::NmseModel: {
      const MeanSe s = mean_and_se(column(0));
      row.nmse_model = s.mean;
      row.nmse_model_se = s.se;
      break;
    }
    case ExperimentKind::Estimate: {
      const MeanSe dse = mean_and_se(column(0));
      const MeanSe nodse = mean_and_se(column(1));
      row.nmse_est_dse = dse.mean;
      row.nmse_est_dse_se = dse.se;
      row.nmse_est_nodse = nodse.mean;
      row.nmse_est_nodse_se = nodse.se;
      break;
    }
    case ExperimentKind::Ber: {
      const MeanSe pd = mean_and_se(column(0));
      const MeanSe pn = mean_and_se(column(1));
      const MeanSe ed = mean_and_se(column(2));
      const MeanSe en = mean_and_se(column(3));
      row.ber_perfect_dse = pd.mean;
      row.ber_perfect_dse_se = pd.se;
      row.ber_perfect_nodse = pn.mean;
      row.ber_perfect_nodse_se = pn.se;
      row.ber_est_dse = ed.mean;
      row.ber_est_dse_se = ed.se;
      row.ber_est_nodse = en.mean;
      row.ber_est_nodse_se = en.se;
      break;
    }
  }
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

} // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::OracleCheck: return "oracle-check";
    case ExperimentKind::NmseModel: return "nmse-model";
    case ExperimentKind::Estimate: return "estimate";
    case ExperimentKind::Ber: return "ber";
  }
  return "?";
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  if (spec.m_list.empty() || spec.velocity_kmh_list.empty() || spec.snr_db_list.empty())
    throw std::invalid_argument("run_experiment: sweep lists must be nonempty");
  if (spec.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
  if (spec.gamma_sigma_mult < 0.0)
    throw std::invalid_argument("run_experiment: gamma_sigma_mult must be >= 0");

  // Resolve and validate every sweep point before any trial runs.
  std::vector<SweepPoint> points;
  for (int m : spec.m_list)
    for (double v : spec.velocity_kmh_list)
      for (double snr : spec.snr_db_list) {
        SweepPoint pt;
        pt.m = m;
        pt.velocity_kmh = v;
        pt.snr_db = snr;
        pt.cfg = spec.sim.frame;
        pt.cfg.num_subcarriers = m;
        pt.cfg.noise_power = noise_power_for_snr_db(pt.cfg.data_power, snr);
        validate_config(pt.cfg, v / 3.6);
        if (spec.kind == ExperimentKind::Ber && !spec.full_scale) {
          const double cost = static_cast<double>(spec.trials) * 4.0 *
                              pt.cfg.num_data_symbols * std::pow(static_cast<double>(m), 3.0);
          if (cost > kFullScaleGate)
            throw std::invalid_argument(
                "run_experiment: this error-rate sweep needs on the order of hours "
                "of equalization work; pass --full-scale to run it anyway");
        }
        points.push_back(std::move(pt));
      }

  std::vector<ResultRow> rows;
  rows.reserve(points.size());
  for (const SweepPoint& pt : points) {
    std::vector<TrialMetrics> metrics(spec.trials);
    std::vector<std::optional<std::string>> failures(spec.trials);
    parallel_for(
        static_cast<std::size_t>(spec.trials),
        [&](std::size_t t) {
          try {
            metrics[t] = run_trial(spec, pt, static_cast<std::uint64_t>(t));
          } catch (const std::exception& err) {
            failures[t] = err.what();
          }
        },
        spec.threads);

    std::vector<TrialMetrics> ok;
    ok.reserve(metrics.size());
    for (std::size_t t = 0; t < metrics.size(); ++t) {
      if (failures[t]) {
        std::cerr << "trial " << t << " failed at m=" << pt.m << " v=" << pt.velocity_kmh
                  << " snr=" << pt.snr_db << ": " << *failures[t] << '\n';
        continue;
      }
      ok.push_back(std::move(metrics[t]));
    }
    if (ok.empty())
      throw std::runtime_error("run_experiment: every trial failed for one sweep point");

    ResultRow row = blank_row(pt);
    row.trials = static_cast<int>(ok.size());
    aggregate(spec.kind, ok, row);
    rows.push_back(row);
  }
  return rows;
}

std::string csv_header() {
  return "m,n,velocity_kmh,snr_db,trials,"
         "nmse_model,nmse_model_se,"
         "nmse_est_dse,nmse_est_dse_se,"
         "nmse_est_nodse,nmse_est_nodse_se,"
         "ber_perfect_dse,ber_perfect_dse_se,"
         "ber_perfect_nodse,ber_perfect_nodse_se,"
         "ber_est_dse,ber_est_dse_se,"
         "ber_est_nodse,ber_est_nodse_se";
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << csv_header() << '\n';
  for (const ResultRow& r : rows) {
    out << r.m << ',' << r.n << ',' << format_double(r.velocity_kmh) << ','
        << format_double(r.snr_db) << ',' << r.trials;
    for (double v : {r.nmse_model, r.nmse_model_se, r.nmse_est_dse, r.nmse_est_dse_se,
                     r.nmse_est_nodse, r.nmse_est_nodse_se, r.ber_perfect_dse,
                     r.ber_perfect_dse_se, r.ber_perfect_nodse, r.ber_perfect_nodse_se,
                     r.ber_est_dse, r.ber_est_dse_se, r.ber_est_nodse, r.ber_est_nodse_se})
      out << ',' << format_double(v);
    out << '\n';
  }
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

std::vector<ResultRow> parse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("parse_csv: empty file " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != csv_header())
    throw std::runtime_error("parse_csv: unexpected header in " + path);

  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 19)
      throw std::runtime_error("parse_csv: expected 19 columns in " + path);
    ResultRow r;
    r.m = std::stoi(cells[0]);
    r.n = std::stoi(cells[1]);
    r.velocity_kmh = std::stod(cells[2]);
    r.snr_db = std::stod(cells[3]);
    r.trials = std::stoi(cells[4]);
    double* fields[] = {&r.nmse_model,        &r.nmse_model_se,
                        &r.nmse_est_dse,      &r.nmse_est_dse_se,
                        &r.nmse_est_nodse,    &r.nmse_est_nodse_se,
                        &r.ber_perfect_dse,   &r.ber_perfect_dse_se,
                        &r.ber_perfect_nodse, &r.ber_perfect_nodse_se,
                        &r.ber_est_dse,       &r.ber_est_dse_se,
                        &r.ber_est_nodse,     &r.ber_est_nodse_se};
    for (std::size_t j = 0; j < 14; ++j) *fields[j] = std::stod(cells[5 + j]);
    rows.push_back(r);
  }
  return rows;
}

void emit_plot_script(const std::string& script_path, const std::string& csv_path) {
  std::ofstream out(script_path);
  if (!out) throw std::runtime_error("emit_plot_script: cannot open " + script_path);
  out << "#!/usr/bin/env python3\n"
         "\"\"\"Renders the metric columns of " << csv_path << " to PNG files.\"\"\"\n"
         "import csv\n"
         "import math\n"
         "import matplotlib\n"
         "matplotlib.use('Agg')\n"
         "import matplotlib.pyplot as plt\n"
         "\n"
         "CSV = " << std::quoted(csv_path) << "\n"
         "with open(CSV, newline='') as fh:\n"
         "    rows = list(csv.DictReader(fh))\n"
         "if not rows:\n"
         "    raise SystemExit('no data rows in ' + CSV)\n"
         "\n"
         "metrics = [c for c in rows[0] if not c.endswith('_se')\n"
         "           and c not in ('m', 'n', 'velocity_kmh', 'snr_db', 'trials')\n"
         "           and any(not math.isnan(float(r[c])) for r in rows)]\n"
         "axes = ['snr_db', 'velocity_kmh', 'm']\n"
         "x_axis = max(axes, key=lambda a: len({r[a] for r in rows}))\n"
         "group_keys = [a for a in axes if a != x_axis]\n"
         "\n"
         "fig, ax = plt.subplots(figsize=(7, 5))\n"
         "for metric in metrics:\n"
         "    groups = sorted({tuple(r[k] for k in group_keys) for r in rows})\n"
         "    for g in groups:\n"
         "        sel = [r for r in rows if tuple(r[k] for k in group_keys) == g]\n"
         "        sel.sort(key=lambda r: float(r[x_axis]))\n"
         "        xs = [float(r[x_axis]) for r in sel]\n"
         "        ys = [float(r[metric]) for r in sel]\n"
         "        es = [float(r[metric + '_se']) for r in sel]\n"
         "        label = metric if len(groups) == 1 else '%s %s' % (metric, dict(zip(group_keys, g)))\n"
         "        if all(not math.isnan(e) for e in es):\n"
         "            ax.errorbar(xs, ys, yerr=[2 * e for e in es], marker='o', capsize=3, label=label)\n"
         "        else:\n"
         "            ax.plot(xs, ys, marker='o', label=label)\n"
         "if any(not math.isnan(float(r[m])) and float(r[m]) > 0 for m in metrics for r in rows):\n"
         "    ax.set_yscale('log')\n"
         "ax.set_xlabel(x_axis)\n"
         "ax.set_ylabel('metric value')\n"
         "ax.grid(True, which='both', alpha=0.3)\n"
         "ax.legend(fontsize=8)\n"
         "png = CSV.rsplit('.', 1)[0] + '.png'\n"
         "fig.tight_layout()\n"
         "fig.savefig(png, dpi=150)\n"
         "print('wrote', png)\n";
  if (!out) throw std::runtime_error("emit_plot_script: write failed for " + script_path);
}

} // namespace otfs
