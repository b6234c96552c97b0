// SPDX-License-Identifier: MIT
#include "otfs/modem.hpp"

#include <cmath>
#include <numbers>

#include "otfs/transforms.hpp"

namespace otfs {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865476;
} // namespace

// ============================================================================
// Bit mapping
// ============================================================================

cplx qpsk_point(int b0, int b1, double power) {
  const double amp = std::sqrt(power) * kInvSqrt2;
  return cplx((1 - 2 * b0) * amp, (1 - 2 * b1) * amp);
}

CMat qpsk_map(const std::vector<std::uint8_t>& bits, const FrameConfig& cfg) {
  const int n = cfg.num_data_symbols;
  const int m = cfg.num_subcarriers;
  if (static_cast<int>(bits.size()) != cfg.bits_per_frame())
    throw std::invalid_argument("qpsk_map: bit count must be 2*N*M");
  CMat grid(n, m);
  std::size_t pos = 0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < m; ++l) {
      grid(k, l) = qpsk_point(bits[pos], bits[pos + 1], cfg.data_power);
      pos += 2;
    }
  return grid;
}

std::vector<std::uint8_t> qpsk_demap(const CMat& dd_grid) {
  std::vector<std::uint8_t> bits;
  bits.reserve(2 * dd_grid.size());
  for (Eigen::Index k = 0; k < dd_grid.rows(); ++k)
    for (Eigen::Index l = 0; l < dd_grid.cols(); ++l) {
      const cplx v = dd_grid(k, l);
      bits.push_back(v.real() < 0.0 ? 1 : 0);
      bits.push_back(v.imag() < 0.0 ? 1 : 0);
    }
  return bits;
}

// ============================================================================
// Frame assembly
// ============================================================================

CMat pilot_rows(const FrameConfig& cfg) {
  CMat rows = CMat::Zero(2, cfg.num_subcarriers);
  for (int q = 0; q < cfg.pilots_per_symbol(); ++q) {
    rows(0, q * cfg.pilot_stride()) = cfg.pilot_value;
    rows(1, q * cfg.pilot_stride()) = cfg.pilot_value;
  }
  return rows;
}

CMat data_rows(const CMat& dd_grid, const FrameConfig& cfg) {
  if (dd_grid.rows() != cfg.num_data_symbols || dd_grid.cols() != cfg.num_subcarriers)
    throw std::invalid_argument("data_rows: grid must be N x M");
  return dft_matrix(cfg.num_data_symbols).adjoint() * dd_grid;
}

TransmitFrame::TransmitFrame(FrameConfig cfg, CMat samples, CMat spectrum)
    : cfg_(std::move(cfg)), samples_(std::move(samples)), spectrum_(std::move(spectrum)) {}

TransmitFrame TransmitFrame::from_delay_doppler(const FrameConfig& cfg, const CMat& dd_grid) {
  const int m = cfg.num_subcarriers;
  CMat samples(cfg.num_symbols(), m);
  samples.topRows(2) = pilot_rows(cfg);
  samples.bottomRows(cfg.num_data_symbols) = data_rows(dd_grid, cfg);

  CMat spectrum(cfg.num_symbols(), m);
  spectrum.row(0) = samples.row(0) * dft_matrix(m);
  spectrum.row(1) = spectrum.row(0);
  if (dd_grid.isZero(0.0)) {
    spectrum.bottomRows(cfg.num_data_symbols).setZero();
  } else {
    spectrum.bottomRows(cfg.num_data_symbols) = isfft(dd_grid);
  }
  return TransmitFrame(cfg, std::move(samples), std::move(spectrum));
}

TransmitFrame TransmitFrame::from_spectrum(const FrameConfig& cfg, CMat spectrum) {
  if (spectrum.rows() != cfg.num_symbols() || spectrum.cols() != cfg.num_subcarriers)
    throw std::invalid_argument("from_spectrum: grid must be (N+2) x M");
  CMat samples = spectrum * dft_matrix(cfg.num_subcarriers).adjoint();
  return TransmitFrame(cfg, std::move(samples), std::move(spectrum));
}

cplx TransmitFrame::waveform(double t) const {
  const double tu = cfg_.extended_symbol_period();
  const double tcp = cfg_.cp_period();
  const int m = cfg_.num_subcarriers;

  // Covering-symbol selection from a single expression so rounding cannot
  // open a gap between adjacent supports: y = t + Tcp, n = floor(y/Tu),
  // u = y - n*Tu in [0, Tu).
  const double y = t + tcp;
  long long n = static_cast<long long>(std::floor(y / tu));
  double u = y - static_cast<double>(n) * tu;
  if (u < 0.0) {
    n -= 1;
    u += tu;
  } else if (u >= tu) {
    n += 1;
    u -= tu;
  }
  if (n < 0 || n >= cfg_.num_symbols()) return cplx(0.0, 0.0);

  // phase(m') = 2*pi * m' * df * (t - n*Tu); reduced mod 1 per subcarrier to
  // keep the argument small at every index.
  const double phi = cfg_.subcarrier_hz * (u - tcp);
  cplx acc(0.0, 0.0);
  const auto row = spectrum_.row(static_cast<Eigen::Index>(n));
  for (int sub = 0; sub < m; ++sub) {
    const double turns = sub * phi;
    const double red = turns - std::floor(turns);
    acc += row(sub) * std::polar(1.0, 2.0 * std::numbers::pi * red);
  }
  return acc / std::sqrt(static_cast<double>(m));
}

} // namespace otfs
