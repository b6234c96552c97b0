// SPDX-License-Identifier: MIT
#include "otfs/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace otfs {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

PilotObservation extract_pilot_vectors(const CMat& rx, const FrameConfig& cfg, int delay) {
  if (delay < 1 || delay > cfg.max_delay_bin)
    throw std::invalid_argument("extract_pilot_vectors: delay out of 1..max_delay_bin");
  if (rx.rows() < 2 || rx.cols() != cfg.num_subcarriers)
    throw std::invalid_argument("extract_pilot_vectors: rx must hold both pilot rows");
  const int probes = cfg.pilots_per_symbol();
  PilotObservation obs{CVec(probes), CVec(probes)};
  for (int q = 0; q < probes; ++q) {
    const int col = q * cfg.pilot_stride() + delay;
    obs.first(q) = rx(0, col);
    obs.second(q) = rx(1, col);
  }
  return obs;
}

bool detect_delay(const PilotObservation& obs, double threshold) {
  const double low =
      std::min(obs.first.cwiseAbs().minCoeff(), obs.second.cwiseAbs().minCoeff());
  return low > threshold;
}

RVec phase_difference(const PilotObservation& obs) {
  RVec theta(obs.first.size());
  for (Eigen::Index q = 0; q < obs.first.size(); ++q) {
    if (obs.first(q) == cplx(0.0, 0.0))
      throw ZeroReferenceError("phase_difference: zero pilot sample in first symbol");
    double th = std::arg(obs.second(q) / obs.first(q));
    if (th <= -kPi) th += kTwoPi; // fold the branch cut onto (-pi, pi]
    theta(q) = th;
  }
  return theta;
}

double extract_doppler(const RVec& theta, const FrameConfig& cfg, SquintMode mode) {
  const double factor = (mode == SquintMode::Aware) ? cfg.squint_factor() : 1.0;
  const double m = cfg.num_subcarriers;
  const double scale =
      m * cfg.num_data_symbols / (kTwoPi * (m + cfg.cp_samples) * factor);
  const double k = scale * theta.mean();
  return std::clamp(k, -static_cast<double>(cfg.max_doppler_bin),
                    static_cast<double>(cfg.max_doppler_bin));
}

cplx estimate_gain(const PilotObservation& obs, const FrameConfig& cfg, int delay,
                   double doppler, SquintMode mode) {
  const double factor = (mode == SquintMode::Aware) ? cfg.squint_factor() : 1.0;
  const int m = cfg.num_subcarriers;
  const int probes = cfg.pilots_per_symbol();
  cplx acc(0.0, 0.0);
  for (int n = 0; n < 2; ++n) {
    const CVec& r = (n == 0) ? obs.first : obs.second;
    for (int q = 0; q < probes; ++q) {
      const double idx = static_cast<double>(n) * (m + cfg.cp_samples) +
                         q * cfg.pilot_stride() + delay;
      const double phase =
          kTwoPi * (idx / m) * (doppler / cfg.num_data_symbols) * factor;
      const cplx psi = cfg.pilot_value * std::polar(1.0, phase);
      acc += std::conj(psi) * r(q);
    }
  }
  return acc / (2.0 * probes * std::norm(cfg.pilot_value));
}

EstimatedCsi estimate_channel(const CMat& rx, const FrameConfig& cfg,
                              double threshold, SquintMode mode) {
  EstimatedCsi csi;
  csi.mode = mode;
  for (int delay = 1; delay <= cfg.max_delay_bin; ++delay) {
    const PilotObservation obs = extract_pilot_vectors(rx, cfg, delay);
    if (!detect_delay(obs, threshold)) continue;
    const double doppler = extract_doppler(phase_difference(obs), cfg, mode);
    const cplx gain = estimate_gain(obs, cfg, delay, doppler, mode);
    csi.entries.push_back(CsiEntry{delay, doppler, gain});
  }
  return csi;
}

CMat reconstruct(const EstimatedCsi& csi, const FrameConfig& cfg, int symbol) {
  ChannelRealization channel;
  channel.paths.reserve(csi.entries.size());
  for (const auto& e : csi.entries)
    channel.paths.push_back(PathParams{e.delay_bin, e.doppler_bin, e.gain});
  if (channel.paths.empty()) return CMat::Zero(cfg.num_subcarriers, cfg.num_subcarriers);
  return channel_matrix(channel, cfg, symbol, csi.mode);
}

EstimatedCsi perfect_csi(const ChannelRealization& channel, SquintMode mode) {
  EstimatedCsi csi;
  csi.mode = mode;
  csi.entries.reserve(channel.paths.size());
  for (const auto& path : channel.paths)
    csi.entries.push_back(CsiEntry{path.delay_bin, path.doppler_bin, path.gain});
  return csi;
}

double default_threshold(const FrameConfig& cfg) {
  return 3.0 * std::sqrt(cfg.noise_power);
}

std::string to_text(const EstimatedCsi& csi) {
  std::ostringstream os;
  os.precision(17);
  os << "mode " << to_string(csi.mode) << '\n';
  for (const auto& e : csi.entries)
    os << e.delay_bin << ' ' << e.doppler_bin << ' ' << e.gain.real() << ' '
       << e.gain.imag() << '\n';
  return os.str();
}

EstimatedCsi csi_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("csi_from_text: empty input");
  std::istringstream header(line);
  std::string word, tag;
  if (!(header >> word >> tag) || word != "mode")
    throw std::invalid_argument("csi_from_text: expected leading 'mode <tag>' line");
  EstimatedCsi csi;
  csi.mode = squint_mode_from_string(tag);
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    CsiEntry e;
    double re = 0.0, im = 0.0;
    if (!(ls >> e.delay_bin >> e.doppler_bin >> re >> im))
      throw std::invalid_argument("csi_from_text: expected 'delay doppler re im'");
    e.gain = cplx(re, im);
    csi.entries.push_back(e);
  }
  return csi;
}

} // namespace otfs
