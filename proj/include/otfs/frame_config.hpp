// SPDX-License-Identifier: MIT
#pragma once

#include "otfs/types.hpp"

namespace otfs {

enum class Modulation { Qpsk };

/// Dimensioning and power parameters of one CP-OFDM-carried OTFS frame.
///
/// A frame is num_data_symbols + 2 OFDM symbols: two leading pilot symbols
/// carrying an impulse comb, then the delay-Doppler payload. Every OFDM
/// symbol has num_subcarriers body samples plus a cp_samples cyclic prefix.
struct FrameConfig {
  double carrier_hz = 4.0e9;
  double subcarrier_hz = 30.0e3;
  int num_subcarriers = 1024;  // body samples per OFDM symbol
  int num_data_symbols = 128;  // delay-Doppler payload symbols (Doppler bins)
  int cp_samples = 24;
  int max_delay_bin = 20;      // largest admissible path delay, in samples
  int max_doppler_bin = 16;    // estimator clamp for normalized Doppler
  cplx pilot_value = cplx(1.0, 0.0);
  double data_power = 1.0;     // average payload symbol power
  double noise_power = 0.0;    // per complex received sample
  Modulation modulation = Modulation::Qpsk;

  double symbol_period() const { return 1.0 / subcarrier_hz; }
  double cp_period() const {
    return symbol_period() * cp_samples / num_subcarriers;
  }
  double extended_symbol_period() const {
    return symbol_period() * (num_subcarriers + cp_samples) / num_subcarriers;
  }
  double sample_period() const { return symbol_period() / num_subcarriers; }
  int pilot_stride() const { return max_delay_bin + 1; }
  int pilots_per_symbol() const { return num_subcarriers / pilot_stride(); }
  int num_symbols() const { return num_data_symbols + 2; }
  int bits_per_frame() const { return 2 * num_data_symbols * num_subcarriers; }

  /// Ratio of the mid-band Doppler shift to the carrier Doppler shift:
  /// 1 + (M-1)*subcarrier_hz/(2*carrier_hz). Appears wherever the squint-aware
  /// per-symbol phase progression is evaluated or inverted.
  double squint_factor() const {
    return 1.0 + (num_subcarriers - 1) * subcarrier_hz / (2.0 * carrier_hz);
  }
};

struct DerivedDims {
  double symbol_period;
  double cp_period;
  double extended_symbol_period;
  double sample_period;
  int pilots_per_symbol;
  int num_symbols;
};

/// Doppler shift of a scatterer moving at speed_mps seen at the carrier.
double doppler_shift_hz(const FrameConfig& cfg, double speed_mps);

/// Normalized Doppler: shift in units of the Doppler resolution 1/(N*T).
double doppler_bin_of(const FrameConfig& cfg, double doppler_hz);

/// Checks structural and physical admissibility for operation at speeds up to
/// max_speed_mps, and returns the derived timing quantities.
///
/// Throws ConfigError with fault():
///  - CPTooShort   cp_samples < max_delay_bin + 2
///  - CPTooLong    cp_samples >= num_subcarriers
///  - DSEAssumptionViolated  frame length (N+2)*M is not small against the
///                 slowest admissible squint period c/max_speed
///  - DopplerAmbiguous  the pilot phase increment at max_doppler_bin would
///                 reach +-pi and wrap, making Doppler extraction ambiguous
/// Throws std::invalid_argument for non-positive dimensions/rates.
DerivedDims validate_config(const FrameConfig& cfg, double max_speed_mps);

} // namespace otfs
