// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <vector>

#include "otfs/types.hpp"

namespace otfs {

/// ||estimated - reference||_F^2 / ||reference||_F^2.
/// Throws ZeroReferenceError when the reference has zero norm.
double nmse(const CMat& estimated, const CMat& reference);

/// Fraction of differing bits; sizes must match and be nonzero.
double bit_error_rate(const std::vector<std::uint8_t>& truth,
                      const std::vector<std::uint8_t>& detected);

/// Pairwise (cascade) summation; error grows with log(n) rather than n, and
/// the result is a pure function of the input order.
double pairwise_sum(const std::vector<double>& values);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0; // standard error of the mean
};

MeanSe mean_and_se(const std::vector<double>& values);

} // namespace otfs
