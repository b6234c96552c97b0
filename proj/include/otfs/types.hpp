// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace otfs {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact by definition

/// Whether receiver-side models account for the frequency dependence of the
/// per-path Doppler shift (Doppler squint) or treat all subcarriers as
/// experiencing the carrier-frequency shift only.
enum class SquintMode { Aware, Ignorant };

const char* to_string(SquintMode mode);
SquintMode squint_mode_from_string(const std::string& text);

enum class ConfigFault { CPTooShort, CPTooLong, DSEAssumptionViolated, DopplerAmbiguous };

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(ConfigFault fault, const std::string& msg)
      : std::invalid_argument(msg), fault_(fault) {}
  ConfigFault fault() const { return fault_; }

 private:
  ConfigFault fault_;
};

/// A quantity that must be nonzero to act as a reference (denominator) was zero.
class ZeroReferenceError : public std::domain_error {
  using std::domain_error::domain_error;
};

/// The regularized normal equations could not be solved reliably.
class SingularSystemError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace otfs
