// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <vector>

#include "otfs/frame_config.hpp"

namespace otfs {

// ============================================================================
// Bit mapping
// ============================================================================

/// Gray-mapped QPSK point for one bit pair at average power `power`.
/// (0,0) -> (+1+j)/sqrt(2) * sqrt(power); the first bit selects the real
/// sign, the second the imaginary sign.
cplx qpsk_point(int b0, int b1, double power);

/// Fills the N x M delay-Doppler grid from bits, two per cell, row-major
/// (Doppler row k outer, delay column l inner). bits.size() must equal
/// cfg.bits_per_frame().
CMat qpsk_map(const std::vector<std::uint8_t>& bits, const FrameConfig& cfg);

/// Hard-decision demapping, inverse traversal order of qpsk_map.
/// Boundary ties (zero real or imaginary part) decide for bit 0.
std::vector<std::uint8_t> qpsk_demap(const CMat& dd_grid);

// ============================================================================
// Frame assembly
// ============================================================================

/// The two leading pilot OFDM symbols as time-domain sample rows (2 x M):
/// pilot_value at columns q*(max_delay_bin+1), q = 0..pilots_per_symbol()-1,
/// zero elsewhere; both rows identical.
CMat pilot_rows(const FrameConfig& cfg);

/// Payload OFDM symbol sample rows (N x M) from the delay-Doppler grid:
/// per delay column, a unitary inverse DFT along the Doppler axis.
CMat data_rows(const CMat& dd_grid, const FrameConfig& cfg);

/// One transmit frame held in both representations: S (per-symbol time
/// samples, (N+2) x M) and X (per-symbol spectrum, (N+2) x M), related by
/// S[n,l] = (1/sqrt(M)) sum_m X[n,m] e^{j2pi*m*l/M}.
class TransmitFrame {
 public:
  static TransmitFrame from_delay_doppler(const FrameConfig& cfg, const CMat& dd_grid);
  static TransmitFrame from_spectrum(const FrameConfig& cfg, CMat spectrum);

  const FrameConfig& config() const { return cfg_; }
  const CMat& samples() const { return samples_; }
  const CMat& spectrum() const { return spectrum_; }

  /// Continuous-time baseband waveform
  ///   s(t) = (1/sqrt(M)) sum_{n,m} X[n,m] g(t - n*Tu + Tcp) e^{j2pi m df (t - n*Tu)}
  /// with g the unit rectangle on [0, Tu). Symbol supports tile the frame
  /// span, so exactly one symbol is evaluated per t; zero outside the frame.
  cplx waveform(double t) const;

 private:
  TransmitFrame(FrameConfig cfg, CMat samples, CMat spectrum);

  FrameConfig cfg_;
  CMat samples_;
  CMat spectrum_;
};

} // namespace otfs
