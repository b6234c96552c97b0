// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "otfs/channel.hpp"

namespace otfs {

/// Received pilot samples gathered at one candidate delay: entry q of each
/// vector is row n of the received frame at column q*(max_delay_bin+1) + delay,
/// for the two pilot symbols n = 0, 1.
struct PilotObservation {
  CVec first;
  CVec second;
};

struct CsiEntry {
  int delay_bin = 1;
  double doppler_bin = 0.0;
  cplx gain = cplx(0.0, 0.0);
};

struct EstimatedCsi {
  std::vector<CsiEntry> entries;
  SquintMode mode = SquintMode::Aware;
};

/// Gathers the pilot observation for candidate delay (1 <= delay <= max_delay_bin).
/// rx rows 0 and 1 must be the received pilot symbols.
PilotObservation extract_pilot_vectors(const CMat& rx, const FrameConfig& cfg, int delay);

/// A path is present iff every gathered sample in both pilot symbols exceeds
/// the threshold in magnitude (strictly).
bool detect_delay(const PilotObservation& obs, double threshold);

/// Per-probe principal-value phase increment between the two pilot symbols:
/// theta(q) = arg(second(q)/first(q)) in (-pi, pi].
/// Throws ZeroReferenceError if any first(q) is zero.
RVec phase_difference(const PilotObservation& obs);

/// Inverts the mean phase increment to normalized Doppler and clamps to
/// [-max_doppler_bin, max_doppler_bin]. Aware divides out the squint factor;
/// Ignorant assumes the carrier-frequency phase progression.
double extract_doppler(const RVec& theta, const FrameConfig& cfg, SquintMode mode);

/// Least-squares path gain against the rank-one pilot model at (delay, doppler):
/// beta = psi^H r / (2 * pilots_per_symbol * |pilot_value|^2).
cplx estimate_gain(const PilotObservation& obs, const FrameConfig& cfg, int delay,
                   double doppler, SquintMode mode);

/// Full sweep over candidate delays 1..max_delay_bin: detect, then extract
/// Doppler and gain per detected delay.
EstimatedCsi estimate_channel(const CMat& rx, const FrameConfig& cfg,
                              double threshold, SquintMode mode);

/// Per-symbol channel matrix implied by the estimate (its own mode selects
/// the tap model). An empty estimate reconstructs the zero matrix.
CMat reconstruct(const EstimatedCsi& csi, const FrameConfig& cfg, int symbol);

/// Ground-truth parameters repackaged as an estimate (genie receiver).
EstimatedCsi perfect_csi(const ChannelRealization& channel, SquintMode mode);

/// Default detection threshold: 3 * sqrt(noise_power).
double default_threshold(const FrameConfig& cfg);

/// Plain text: "mode <tag>" line, then one entry per line as in channel
/// serialization.
std::string to_text(const EstimatedCsi& csi);
EstimatedCsi csi_from_text(const std::string& text);

} // namespace otfs
