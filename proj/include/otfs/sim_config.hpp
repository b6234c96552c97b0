// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>

#include "otfs/frame_config.hpp"

namespace otfs {

/// One simulation setup as read from a config file: the frame dimensioning
/// plus scenario defaults (overridable from the command line).
struct SimulationConfig {
  FrameConfig frame;
  double pilot_power_db_over_data = 30.0;
  double snr_db = 30.0;
  double velocity_kmh = 1000.0;
  int n_paths = 4;
  std::uint64_t seed = 1;
  int trials = 100;
};

/// Noise power for a target SNR given the data power: sigma_s^2 / 10^(snr/10).
double noise_power_for_snr_db(double data_power, double snr_db);

/// Pilot amplitude (real, positive) carrying the configured boost over the
/// data power: |x_p|^2 = data_power * 10^(boost_db/10).
cplx pilot_value_for_boost(double data_power, double boost_db);

/// Parses a flat key-value config file ("key = value" per line, '#' comments).
/// Required keys, all present exactly once:
///   carrier_hz subcarrier_hz m n m_cp l_max k_max pilot_power_db_over_data
///   sigma_s2 snr_db velocity_kmh n_paths seed trials
/// frame.noise_power and frame.pilot_value are derived from snr_db/sigma_s2
/// and the pilot boost. Unknown keys are errors.
SimulationConfig load_sim_config(const std::string& path);

} // namespace otfs
