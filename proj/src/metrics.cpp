// SPDX-License-Identifier: MIT
#include "otfs/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace otfs {

double nmse(const CMat& estimated, const CMat& reference) {
  if (estimated.rows() != reference.rows() || estimated.cols() != reference.cols())
    throw std::invalid_argument("nmse: shape mismatch");
  const double ref = reference.squaredNorm();
  if (ref == 0.0) throw ZeroReferenceError("nmse: zero reference");
  return (estimated - reference).squaredNorm() / ref;
}

double bit_error_rate(const std::vector<std::uint8_t>& truth,
                      const std::vector<std::uint8_t>& detected) {
  if (truth.empty() || truth.size() != detected.size())
    throw std::invalid_argument("bit_error_rate: sizes must match and be nonzero");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (truth[i] != detected[i]) ++errors;
  return static_cast<double>(errors) / static_cast<double>(truth.size());
}

namespace {
double pairwise_range(const double* data, std::size_t count) {
  if (count == 0) return 0.0;
  if (count <= 8) {
    double acc = data[0];
    for (std::size_t i = 1; i < count; ++i) acc += data[i];
    return acc;
  }
  const std::size_t half = count / 2;
  return pairwise_range(data, half) + pairwise_range(data + half, count - half);
}
} // namespace

double pairwise_sum(const std::vector<double>& values) {
  return pairwise_range(values.data(), values.size());
}

MeanSe mean_and_se(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("mean_and_se: empty sample");
  MeanSe out;
  const double n = static_cast<double>(values.size());
  out.mean = pairwise_sum(values) / n;
  if (values.size() == 1) return out; // se stays 0: no spread information
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - out.mean;
    sq[i] = d * d;
  }
  const double var = pairwise_sum(sq) / (n - 1.0);
  out.se = std::sqrt(var / n);
  return out;
}

} // namespace otfs
