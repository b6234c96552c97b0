// SPDX-License-Identifier: MIT
#include "otfs/transforms.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace otfs {

const CMat& dft_matrix(int size) {
  if (size < 1) throw std::invalid_argument("dft_matrix: size must be >= 1");
  static std::mutex cache_mutex;
  static std::map<int, std::unique_ptr<const CMat>> cache;

  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(size);
  if (it == cache.end()) {
    auto f = std::make_unique<CMat>(size, size);
    const double scale = 1.0 / std::sqrt(static_cast<double>(size));
    for (int a = 0; a < size; ++a) {
      for (int b = 0; b < size; ++b) {
        // exact integer reduction keeps every angle in [0, 2*pi)
        const long long red = (static_cast<long long>(a) * b) % size;
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(red) / size;
        (*f)(a, b) = std::polar(scale, angle);
      }
    }
    it = cache.emplace(size, std::move(f)).first;
  }
  return *it->second;
}

CMat isfft(const CMat& dd_grid) {
  const int n = static_cast<int>(dd_grid.rows());
  const int m = static_cast<int>(dd_grid.cols());
  if (n < 1 || m < 1) throw std::invalid_argument("isfft: empty grid");
  return dft_matrix(n).adjoint() * dd_grid * dft_matrix(m);
}

CMat sfft(const CMat& tf_grid) {
  const int n = static_cast<int>(tf_grid.rows());
  const int m = static_cast<int>(tf_grid.cols());
  if (n < 1 || m < 1) throw std::invalid_argument("sfft: empty grid");
  return dft_matrix(n) * tf_grid * dft_matrix(m).adjoint();
}

} // namespace otfs
