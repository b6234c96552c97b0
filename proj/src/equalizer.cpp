// SPDX-License-Identifier: MIT
#include "otfs/equalizer.hpp"

#include <Eigen/Cholesky>

#include "otfs/parallel.hpp"
#include "otfs/transforms.hpp"

namespace otfs {

CVec lmmse_equalize(const CMat& channel, const CVec& received,
                    double noise_power, double data_power) {
  if (channel.rows() != received.size())
    throw std::invalid_argument("lmmse_equalize: row count mismatch");
  if (noise_power < 0.0)
    throw std::invalid_argument("lmmse_equalize: noise_power must be >= 0");
  if (data_power <= 0.0) throw std::invalid_argument("lmmse_equalize: data_power must be > 0");
  const Eigen::Index m = channel.cols();
  const CMat normal = channel.adjoint() * channel +
                      (noise_power / data_power) * CMat::Identity(m, m);
  const CVec rhs = channel.adjoint() * received;

  const Eigen::LLT<CMat> llt(normal);
  if (llt.info() != Eigen::Success)
    throw SingularSystemError("lmmse_equalize: normal matrix not positive definite");
  const CVec solution = llt.solve(rhs);

  const double rhs_norm = rhs.norm();
  if (rhs_norm > 0.0 && (normal * solution - rhs).norm() > 1e-8 * rhs_norm)
    throw SingularSystemError("lmmse_equalize: normal equations not satisfied");
  return solution;
}

CMat dd_demodulate(const CMat& equalized_rows, const FrameConfig& cfg) {
  if (equalized_rows.rows() != cfg.num_data_symbols ||
      equalized_rows.cols() != cfg.num_subcarriers)
    throw std::invalid_argument("dd_demodulate: payload must be N x M");
  return dft_matrix(cfg.num_data_symbols) * equalized_rows;
}

std::vector<std::uint8_t> detect_frame(const CMat& rx, const EstimatedCsi& csi,
                                       const FrameConfig& cfg, unsigned threads,
                                       CMat* dd_out) {
  if (rx.rows() != cfg.num_symbols() || rx.cols() != cfg.num_subcarriers)
    throw std::invalid_argument("detect_frame: rx must be (N+2) x M");
  const int n_payload = cfg.num_data_symbols;
  CMat equalized(n_payload, cfg.num_subcarriers);
  parallel_for(
      static_cast<std::size_t>(n_payload),
      [&](std::size_t row) {
        const int symbol = static_cast<int>(row) + 2;
        const CMat h = reconstruct(csi, cfg, symbol);
        equalized.row(static_cast<Eigen::Index>(row)) =
            lmmse_equalize(h, rx.row(symbol).transpose(), cfg.noise_power, cfg.data_power)
                .transpose();
      },
      threads);
  const CMat dd = dd_demodulate(equalized, cfg);
  if (dd_out != nullptr) *dd_out = dd;
  return qpsk_demap(dd);
}

} // namespace otfs
