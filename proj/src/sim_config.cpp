// SPDX-License-Identifier: MIT
#include "otfs/sim_config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace otfs {

double noise_power_for_snr_db(double data_power, double snr_db) {
  return data_power / std::pow(10.0, snr_db / 10.0);
}

cplx pilot_value_for_boost(double data_power, double boost_db) {
  return cplx(std::sqrt(data_power * std::pow(10.0, boost_db / 10.0)), 0.0);
}

namespace {

const char* const kRequiredKeys[] = {
    "carrier_hz", "subcarrier_hz", "m",    "n",          "m_cp",
    "l_max",      "k_max",         "pilot_power_db_over_data",
    "sigma_s2",   "snr_db",        "velocity_kmh",       "n_paths",
    "seed",       "trials",
};

std::string strip(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double as_number(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': not a number: '" + value + "'");
  }
  if (used != value.size())
    throw std::invalid_argument("config key '" + key + "': trailing junk in '" + value + "'");
  return out;
}

int as_int(const std::string& key, const std::string& value) {
  const double d = as_number(key, value);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw std::invalid_argument("config key '" + key + "': expected an integer");
  return i;
}

} // namespace

SimulationConfig load_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);

  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = strip(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected 'key = value'");
    const std::string key = strip(body.substr(0, eq));
    const std::string value = strip(body.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected 'key = value'");
    if (!kv.emplace(key, value).second)
      throw std::invalid_argument(path + ": duplicate key '" + key + "'");
  }

  for (const char* key : kRequiredKeys)
    if (kv.find(key) == kv.end())
      throw std::invalid_argument(path + ": missing required key '" + key + "'");
  for (const auto& [key, value] : kv) {
    bool known = false;
    for (const char* k : kRequiredKeys) known = known || key == k;
    if (!known) throw std::invalid_argument(path + ": unknown key '" + key + "'");
  }

  SimulationConfig sim;
  sim.frame.carrier_hz = as_number("carrier_hz", kv["carrier_hz"]);
  sim.frame.subcarrier_hz = as_number("subcarrier_hz", kv["subcarrier_hz"]);
  sim.frame.num_subcarriers = as_int("m", kv["m"]);
  sim.frame.num_data_symbols = as_int("n", kv["n"]);
  sim.frame.cp_samples = as_int("m_cp", kv["m_cp"]);
  sim.frame.max_delay_bin = as_int("l_max", kv["l_max"]);
  sim.frame.max_doppler_bin = as_int("k_max", kv["k_max"]);
  sim.frame.data_power = as_number("sigma_s2", kv["sigma_s2"]);
  sim.pilot_power_db_over_data =
      as_number("pilot_power_db_over_data", kv["pilot_power_db_over_data"]);
  sim.snr_db = as_number("snr_db", kv["snr_db"]);
  sim.velocity_kmh = as_number("velocity_kmh", kv["velocity_kmh"]);
  sim.n_paths = as_int("n_paths", kv["n_paths"]);
  const double seed = as_number("seed", kv["seed"]);
  if (seed < 0.0 || seed != std::floor(seed))
    throw std::invalid_argument(path + ": seed must be a non-negative integer");
  sim.seed = static_cast<std::uint64_t>(seed);
  sim.trials = as_int("trials", kv["trials"]);

  sim.frame.noise_power = noise_power_for_snr_db(sim.frame.data_power, sim.snr_db);
  sim.frame.pilot_value =
      pilot_value_for_boost(sim.frame.data_power, sim.pilot_power_db_over_data);
  return sim;
}

} // namespace otfs
