// SPDX-License-Identifier: MIT
#include "otfs/rng.hpp"

#include <cmath>
#include <numbers>

namespace otfs {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t id) {
  return splitmix64(splitmix64(seed) ^ (id + 0x9e3779b97f4a7c15ULL));
}

std::uint64_t trial_stream_seed(std::uint64_t seed, std::uint64_t trial,
                                std::uint64_t stream_id) {
  return mix_seed(mix_seed(seed, trial), stream_id);
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double RngStream::gaussian() {
  // Box-Muller; uniform01() == 0 is remapped to keep the log finite.
  double u1 = uniform01();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx RngStream::circular_gaussian(double variance) {
  double u1 = uniform01();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double u2 = uniform01();
  const double radius = std::sqrt(-variance * std::log(u1));
  return std::polar(radius, 2.0 * std::numbers::pi * u2);
}

int RngStream::uniform_int(int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - lo + 1;
  const std::uint64_t reject_below = (-span) % span; // makes 2^64 a multiple of span
  std::uint64_t draw;
  do {
    draw = next_u64();
  } while (draw < reject_below);
  return lo + static_cast<int>(draw % span);
}

} // namespace otfs
