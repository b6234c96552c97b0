// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otfs/modem.hpp"
#include "otfs/rng.hpp"

namespace otfs {

/// One propagation path: integer delay bin (>= 1), real-valued normalized
/// Doppler, complex gain (carrier phase already folded in).
struct PathParams {
  int delay_bin = 1;
  double doppler_bin = 0.0;
  cplx gain = cplx(0.0, 0.0);

  double doppler_hz(const FrameConfig& cfg) const {
    return doppler_bin * cfg.subcarrier_hz / cfg.num_data_symbols;
  }
  double delay_s(const FrameConfig& cfg) const {
    return delay_bin * cfg.sample_period();
  }
  /// Reciprocal of the time-dilation constant: nu/f_c. Zero for a static
  /// path. The received contribution is gain * e^{j2pi nu t} * s(t - tau + t*inverse_squint).
  double inverse_squint(const FrameConfig& cfg) const {
    return doppler_bin * cfg.subcarrier_hz / (cfg.num_data_symbols * cfg.carrier_hz);
  }
};

struct ChannelRealization {
  std::vector<PathParams> paths;
};

/// Draws n_paths paths: Doppler nu_max*cos(theta) with theta ~ U[-pi, pi),
/// gains CN(0, 1/n_paths), delays uniform without replacement from
/// {1..max_delay_bin}. Requires 1 <= n_paths <= max_delay_bin.
ChannelRealization jakes_channel(const FrameConfig& cfg, double max_speed_mps,
                                 int n_paths, RngStream& rng);

/// sin(pi*x)/(size*sin(pi*x/size)); near removable singularities
/// (|sin(pi*x/size)| < 1e-9) the analytic limit cos(pi*x)/cos(pi*x/size).
double dirichlet_kernel(double x, int size);

/// Closed-form per-symbol channel tap h_n[out_sample, in_sample] of one path.
///
/// SquintMode::Aware gives the full model: squint-scaled Doppler phase
/// progression and Dirichlet spreading across delay; SquintMode::Ignorant is
/// the infinite-dilation limit that keeps only the carrier-frequency Doppler
/// phase and a single tap per row at (out - delay_bin) mod M.
cplx channel_tap(const PathParams& path, const FrameConfig& cfg, int symbol,
                 int out_sample, int in_sample, SquintMode mode);

/// M x M per-symbol matrix: sum of channel_tap over paths (Aware), or the
/// sparse one-tap-per-row accumulation (Ignorant). Matches channel_tap
/// entrywise; built via trigonometric tables for speed.
CMat channel_matrix(const ChannelRealization& channel, const FrameConfig& cfg,
                    int symbol, SquintMode mode);

/// Reference receiver: samples the continuous-time superposition
///   r(t) = sum_i gain_i e^{j2pi nu_i t} s(t - tau_i + t/p_i)
/// at t = n*Tu + l*T/M for symbols first_symbol <= n < end_symbol.
/// Row r of the result is symbol first_symbol + r.
CMat oracle_receive_rows(const TransmitFrame& frame, const ChannelRealization& channel,
                         int first_symbol, int end_symbol);
CMat oracle_receive(const TransmitFrame& frame, const ChannelRealization& channel);

/// Max |matrix-route - oracle-route| over the frame, relative to max |oracle|.
/// The matrix route applies channel_matrix(..., Aware) per symbol row.
double matrix_vs_oracle_deviation(const TransmitFrame& frame,
                                  const ChannelRealization& channel);

/// Adds CN(0, noise_power) per sample. Row n draws from the substream
/// mix_seed(stream_seed, n), so per-symbol noise is reproducible regardless
/// of row processing order. noise_power == 0 is an exact no-op.
void add_awgn(CMat& frame, double noise_power, std::uint64_t stream_seed);

/// Plain-text serialization, one path per line: delay_bin doppler_bin Re Im.
std::string to_text(const ChannelRealization& channel);
ChannelRealization channel_from_text(const std::string& text);

} // namespace otfs
