// SPDX-License-Identifier: MIT
#pragma once

#include "otfs/types.hpp"

namespace otfs {

/// Unitary DFT matrix, F(a,b) = exp(-j*2*pi*a*b/size)/sqrt(size).
/// Cached per size; the returned reference stays valid for program lifetime.
const CMat& dft_matrix(int size);

/// Delay-Doppler grid (N x M, Doppler rows, delay columns) to
/// time-frequency grid (N x M, time rows, subcarrier columns):
///   X[n,m] = (1/sqrt(N*M)) * sum_{k,l} x[k,l] e^{j2pi(nk/N - ml/M)}
CMat isfft(const CMat& dd_grid);

/// Inverse of isfft.
CMat sfft(const CMat& tf_grid);

} // namespace otfs
