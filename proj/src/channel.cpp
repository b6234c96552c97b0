// SPDX-License-Identifier: MIT
#include "otfs/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace otfs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Below this |sin(pi*x/M)| the Dirichlet ratio switches to its analytic limit.
constexpr double kDirichletGuard = 1e-9;

// Global sample index of sample l in symbol n (CP samples included in the
// per-symbol stride).
double sample_index(const FrameConfig& cfg, int symbol, int l) {
  return static_cast<double>(symbol) * (cfg.num_subcarriers + cfg.cp_samples) + l;
}

} // namespace

// ============================================================================
// Channel draws
// ============================================================================

ChannelRealization jakes_channel(const FrameConfig& cfg, double max_speed_mps,
                                 int n_paths, RngStream& rng) {
  if (n_paths < 1 || n_paths > cfg.max_delay_bin)
    throw std::invalid_argument("jakes_channel: need 1 <= n_paths <= max_delay_bin");
  const double nu_max = max_speed_mps * cfg.carrier_hz / kSpeedOfLight;

  ChannelRealization out;
  out.paths.resize(n_paths);
  for (auto& path : out.paths) {
    const double theta = rng.uniform(-kPi, kPi);
    path.doppler_bin = nu_max * std::cos(theta) * cfg.num_data_symbols / cfg.subcarrier_hz;
    path.gain = rng.circular_gaussian(1.0 / n_paths);
  }
  // Delays: partial Fisher-Yates over {1..max_delay_bin}, no replacement.
  std::vector<int> pool(cfg.max_delay_bin);
  for (int i = 0; i < cfg.max_delay_bin; ++i) pool[i] = i + 1;
  for (int i = 0; i < n_paths; ++i) {
    const int j = rng.uniform_int(i, cfg.max_delay_bin - 1);
    std::swap(pool[i], pool[j]);
    out.paths[i].delay_bin = pool[i];
  }
  return out;
}

// ============================================================================
// Per-symbol taps
// ============================================================================

double dirichlet_kernel(double x, int size) {
  const double den = std::sin(kPi * x / size);
  if (std::abs(den) < kDirichletGuard)
    return std::cos(kPi * x) / std::cos(kPi * x / size);
  return std::sin(kPi * x) / (size * den);
}

cplx channel_tap(const PathParams& path, const FrameConfig& cfg, int symbol,
                 int out_sample, int in_sample, SquintMode mode) {
  const int m = cfg.num_subcarriers;
  const double idx = sample_index(cfg, symbol, out_sample);

  if (mode == SquintMode::Ignorant) {
    const int want = ((out_sample - path.delay_bin) % m + m) % m;
    if (in_sample != want) return cplx(0.0, 0.0);
    const double phase = kTwoPi * idx * path.doppler_bin / (cfg.num_data_symbols * m);
    return path.gain * std::polar(1.0, phase);
  }

  const int a = out_sample - in_sample - path.delay_bin;
  const double x = a + idx * path.inverse_squint(cfg);
  const double doppler_phase =
      kTwoPi * (idx / m) * (path.doppler_bin / cfg.num_data_symbols) * cfg.squint_factor();
  const double spread_phase = kPi * (m - 1) * a / static_cast<double>(m);
  return path.gain * std::polar(1.0, doppler_phase + spread_phase) * dirichlet_kernel(x, m);
}

CMat channel_matrix(const ChannelRealization& channel, const FrameConfig& cfg,
                    int symbol, SquintMode mode) {
  const int m = cfg.num_subcarriers;
  CMat h = CMat::Zero(m, m);

  if (mode == SquintMode::Ignorant) {
    for (const auto& path : channel.paths)
      for (int out = 0; out < m; ++out) {
        const double phase = kTwoPi * sample_index(cfg, symbol, out) * path.doppler_bin /
                             (cfg.num_data_symbols * m);
        h(out, ((out - path.delay_bin) % m + m) % m) += path.gain * std::polar(1.0, phase);
      }
    return h;
  }

  // sin/cos(pi*a/M) repeat with period 2M in the integer offset a, so one
  // table per build covers every (out, in) pair; per row only the fractional
  // part of x = a + off changes and angle addition supplies sin(pi*x/M).
  // The row phase e^{j*pi*(M-1)*a/M} equals (-1)^a e^{-j*pi*a/M}, and
  // sin(pi*(a+off)) = (-1)^a sin(pi*off), so the parity factors cancel:
  //   tap = gain * dopp * (cos(pi*a/M) - j*sin(pi*a/M)) * sin(pi*off) / (M*den).
  std::vector<double> sin_tab(2 * m), cos_tab(2 * m);
  for (int j = 0; j < 2 * m; ++j) {
    sin_tab[j] = std::sin(kPi * j / m);
    cos_tab[j] = std::cos(kPi * j / m);
  }

  for (const auto& path : channel.paths) {
    const double inv_squint = path.inverse_squint(cfg);
    for (int out = 0; out < m; ++out) {
      const double idx = sample_index(cfg, symbol, out);
      const double doppler_phase =
          kTwoPi * (idx / m) * (path.doppler_bin / cfg.num_data_symbols) * cfg.squint_factor();
      const cplx row_gain = path.gain * std::polar(1.0, doppler_phase);

      const double off = idx * inv_squint;
      const double sin_off = std::sin(kPi * off);
      const double sin_off_m = std::sin(kPi * off / m);
      const double cos_off_m = std::cos(kPi * off / m);

      for (int in = 0; in < m; ++in) {
        const int a = out - in - path.delay_bin;
        const int j = ((a % (2 * m)) + 2 * m) % (2 * m);
        const double den = sin_tab[j] * cos_off_m + cos_tab[j] * sin_off_m;
        if (std::abs(den) < kDirichletGuard) {
          const double x = a + off;
          const double spread_phase = kPi * (m - 1) * a / static_cast<double>(m);
          h(out, in) += row_gain * std::polar(1.0, spread_phase) *
                        (std::cos(kPi * x) / std::cos(kPi * x / m));
        } else {
          h(out, in) += row_gain * cplx(cos_tab[j], -sin_tab[j]) * (sin_off / (m * den));
        }
      }
    }
  }
  return h;
}

// ============================================================================
// Continuous-time reference route
// ============================================================================

CMat oracle_receive_rows(const TransmitFrame& frame, const ChannelRealization& channel,
                         int first_symbol, int end_symbol) {
  const FrameConfig& cfg = frame.config();
  const int m = cfg.num_subcarriers;
  if (first_symbol < 0 || end_symbol > cfg.num_symbols() || first_symbol >= end_symbol)
    throw std::invalid_argument("oracle_receive_rows: bad symbol range");

  CMat rx(end_symbol - first_symbol, m);
  for (int n = first_symbol; n < end_symbol; ++n)
    for (int l = 0; l < m; ++l) {
      const double t = n * cfg.extended_symbol_period() + l * cfg.sample_period();
      cplx acc(0.0, 0.0);
      for (const auto& path : channel.paths) {
        const double t_arg = t - path.delay_s(cfg) + t * path.inverse_squint(cfg);
        acc += path.gain * std::polar(1.0, kTwoPi * path.doppler_hz(cfg) * t) *
               frame.waveform(t_arg);
      }
      rx(n - first_symbol, l) = acc;
    }
  return rx;
}

CMat oracle_receive(const TransmitFrame& frame, const ChannelRealization& channel) {
  return oracle_receive_rows(frame, channel, 0, frame.config().num_symbols());
}

double matrix_vs_oracle_deviation(const TransmitFrame& frame,
                                  const ChannelRealization& channel) {
  const FrameConfig& cfg = frame.config();
  const CMat oracle = oracle_receive(frame, channel);
  CMat matrix_route(cfg.num_symbols(), cfg.num_subcarriers);
  for (int n = 0; n < cfg.num_symbols(); ++n)
    matrix_route.row(n) =
        (channel_matrix(channel, cfg, n, SquintMode::Aware) * frame.samples().row(n).transpose())
            .transpose();
  const double scale = oracle.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw ZeroReferenceError("matrix_vs_oracle_deviation: zero reference frame");
  return (matrix_route - oracle).cwiseAbs().maxCoeff() / scale;
}

// ============================================================================
// Noise and serialization
// ============================================================================

void add_awgn(CMat& frame, double noise_power, std::uint64_t stream_seed) {
  if (noise_power == 0.0) return;
  if (noise_power < 0.0) throw std::invalid_argument("add_awgn: negative noise power");
  for (Eigen::Index n = 0; n < frame.rows(); ++n) {
    RngStream row_stream(mix_seed(stream_seed, static_cast<std::uint64_t>(n)));
    for (Eigen::Index l = 0; l < frame.cols(); ++l)
      frame(n, l) += row_stream.circular_gaussian(noise_power);
  }
}

std::string to_text(const ChannelRealization& channel) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& path : channel.paths)
    os << path.delay_bin << ' ' << path.doppler_bin << ' ' << path.gain.real() << ' '
       << path.gain.imag() << '\n';
  return os.str();
}

ChannelRealization channel_from_text(const std::string& text) {
  ChannelRealization out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    PathParams path;
    double re = 0.0, im = 0.0;
    if (!(ls >> path.delay_bin >> path.doppler_bin >> re >> im))
      throw std::invalid_argument("channel_from_text: expected 'delay doppler re im'");
    path.gain = cplx(re, im);
    out.paths.push_back(path);
  }
  return out;
}

} // namespace otfs
