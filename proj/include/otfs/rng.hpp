// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <random>

#include "otfs/types.hpp"

namespace otfs {

/// Derives an independent substream seed from (seed, id). Used to give every
/// (trial), (trial, purpose) and (trial, purpose, symbol) counter tuple its
/// own stream, so results do not depend on scheduling or on which other
/// sweep points exist.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t id);

inline constexpr std::uint64_t kChannelStreamId = 1;
inline constexpr std::uint64_t kDataStreamId = 2;
inline constexpr std::uint64_t kNoiseStreamId = 3;

/// Seed for one purpose-stream of one Monte-Carlo trial.
std::uint64_t trial_stream_seed(std::uint64_t seed, std::uint64_t trial,
                                std::uint64_t stream_id);

/// Deterministic random stream. Gaussian and integer draws are implemented
/// here (not via <random> distributions) so byte-identical output does not
/// depend on the standard library flavor.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }
  double uniform01(); // [0, 1)
  double uniform(double lo, double hi);
  double gaussian();  // N(0, 1)
  /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
  cplx circular_gaussian(double variance);
  int uniform_int(int lo, int hi); // inclusive bounds

 private:
  std::mt19937_64 eng_;
};

} // namespace otfs
