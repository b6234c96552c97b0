// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <vector>

#include "otfs/estimator.hpp"

namespace otfs {

/// LMMSE per-symbol equalization:
///   s_hat = (H^H H + (noise_power/data_power) I)^{-1} H^H r
/// solved by Cholesky factorization of the regularized normal matrix, never
/// by explicit inversion. Throws SingularSystemError if the factorization
/// fails or the solution does not satisfy the normal equations to 1e-8
/// relative residual (possible only for noise_power == 0 with a singular H).
CVec lmmse_equalize(const CMat& channel, const CVec& received,
                    double noise_power, double data_power);

/// Payload rows (N x M of equalized per-symbol samples) back to the
/// delay-Doppler grid: per delay column, a unitary forward DFT along the
/// symbol axis.
CMat dd_demodulate(const CMat& equalized_rows, const FrameConfig& cfg);

/// Whole-frame receiver: reconstructs the per-symbol channel from csi,
/// equalizes every payload symbol, demodulates to the delay-Doppler grid,
/// and hard-demaps. rx is the full received frame ((N+2) x M). If dd_out is
/// non-null it receives the demodulated grid. Payload symbols are processed
/// independently (parallel across `threads` workers; result independent of
/// thread count).
std::vector<std::uint8_t> detect_frame(const CMat& rx, const EstimatedCsi& csi,
                                       const FrameConfig& cfg, unsigned threads = 1,
                                       CMat* dd_out = nullptr);

} // namespace otfs
