// SPDX-License-Identifier: MIT
#include "otfs/frame_config.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace otfs {

const char* to_string(SquintMode mode) {
  return mode == SquintMode::Aware ? "dse-aware" : "dse-ignorant";
}

SquintMode squint_mode_from_string(const std::string& text) {
  if (text == "dse-aware") return SquintMode::Aware;
  if (text == "dse-ignorant") return SquintMode::Ignorant;
  throw std::invalid_argument("unknown squint mode tag: " + text);
}

double doppler_shift_hz(const FrameConfig& cfg, double speed_mps) {
  if (speed_mps < 0.0) throw std::invalid_argument("speed must be >= 0");
  return speed_mps * cfg.carrier_hz / kSpeedOfLight;
}

double doppler_bin_of(const FrameConfig& cfg, double doppler_hz) {
  return doppler_hz * cfg.num_data_symbols / cfg.subcarrier_hz;
}

DerivedDims validate_config(const FrameConfig& cfg, double max_speed_mps) {
  if (cfg.carrier_hz <= 0.0 || cfg.subcarrier_hz <= 0.0)
    throw std::invalid_argument("carrier and subcarrier rates must be positive");
  if (cfg.num_subcarriers < 2 || cfg.num_data_symbols < 1)
    throw std::invalid_argument("frame dimensions must be positive");
  if (cfg.cp_samples < 1 || cfg.max_delay_bin < 1 || cfg.max_doppler_bin < 1)
    throw std::invalid_argument("cp_samples, max_delay_bin, max_doppler_bin must be >= 1");
  if (cfg.data_power <= 0.0 || cfg.noise_power < 0.0)
    throw std::invalid_argument("data_power must be > 0 and noise_power >= 0");
  if (max_speed_mps < 0.0)
    throw std::invalid_argument("max speed must be >= 0");

  if (cfg.cp_samples < cfg.max_delay_bin + 2) {
    std::ostringstream os;
    os << "cyclic prefix too short: cp_samples=" << cfg.cp_samples
       << " < max_delay_bin+2=" << cfg.max_delay_bin + 2;
    throw ConfigError(ConfigFault::CPTooShort, os.str());
  }
  if (cfg.cp_samples >= cfg.num_subcarriers) {
    std::ostringstream os;
    os << "cyclic prefix too long: cp_samples=" << cfg.cp_samples
       << " >= num_subcarriers=" << cfg.num_subcarriers;
    throw ConfigError(ConfigFault::CPTooLong, os.str());
  }

  // Time dilation must stay far slower than the frame: the smallest
  // admissible dilation constant c/v (in samples) must exceed the frame
  // length in samples.
  if (max_speed_mps > 0.0) {
    const double frame_samples =
        static_cast<double>(cfg.num_symbols()) * cfg.num_subcarriers;
    const double min_dilation = kSpeedOfLight / max_speed_mps;
    if (frame_samples >= min_dilation) {
      std::ostringstream os;
      os << "squint model assumption violated: frame length " << frame_samples
         << " samples >= minimum dilation constant " << min_dilation;
      throw ConfigError(ConfigFault::DSEAssumptionViolated, os.str());
    }
  }

  // The per-delay pilot phase increment at the Doppler clamp must stay
  // strictly inside (-pi, pi), or Doppler extraction wraps.
  const double wrap = 2.0 * std::numbers::pi *
                      (cfg.num_subcarriers + cfg.cp_samples) / cfg.num_subcarriers *
                      cfg.max_doppler_bin / cfg.num_data_symbols * cfg.squint_factor();
  if (wrap >= std::numbers::pi) {
    std::ostringstream os;
    os << "Doppler extraction ambiguous: pilot phase increment at "
       << "max_doppler_bin=" << cfg.max_doppler_bin << " is " << wrap
       << " rad >= pi";
    throw ConfigError(ConfigFault::DopplerAmbiguous, os.str());
  }

  DerivedDims dims;
  dims.symbol_period = cfg.symbol_period();
  dims.cp_period = cfg.cp_period();
  dims.extended_symbol_period = cfg.extended_symbol_period();
  dims.sample_period = cfg.sample_period();
  dims.pilots_per_symbol = cfg.pilots_per_symbol();
  dims.num_symbols = cfg.num_symbols();
  return dims;
}

} // namespace otfs
