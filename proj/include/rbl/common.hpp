#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace rbl {

using cplx = std::complex<double>;

// Error with a stable machine-readable code plus a human message.
// Codes in use: config-invalid, invariant-violated, calibration-failed,
// rejection-overflow, orbit-degenerate, degenerate-trace, ill-conditioned,
// domain-error, not-in-basin, precision-exhausted, root-of-unity, pole,
// dimension-mismatch, io-error, no-preimage, internal.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Pinned defaults shared by the CLI, the suites, and the acceptance gate.
namespace defaults {
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kBeta = 0.3;          // wedge exponent
inline constexpr double kTheta = kPi / 4.0;   // sector half-angle
inline constexpr double kRMin = 10.0;         // first calibration candidate
inline constexpr double kRMax = 10240.0;      // calibration gives up beyond this
inline constexpr double kEscapeRadius = 10.0; // sup-norm escape threshold
inline constexpr double kTolPsi = 1e-8;
inline constexpr double kTolSigma = 1e-8;
inline constexpr int kMCap = 40000;           // iteration cap for coordinate limits
inline constexpr long kHorizonClassify = 100000;
inline constexpr long kHorizonInvariance = 10000;
inline constexpr double kStagnationTol = 1e-3;
inline constexpr double kResonanceTol = 1e-12;
inline constexpr double kNearMissTol = 1e-6;
inline constexpr int kDeckWindow = 16;
inline constexpr int kPrecisionDigits = 60;   // extended-precision digits
inline constexpr unsigned kSeed = 20260816;
inline constexpr int kNewtonMaxSteps = 50;
inline constexpr double kNewtonStepTol = 1e-10;
inline constexpr double kNewtonResTol = 1e-9;
inline constexpr double kRatioNormThreshold = 0.08;
inline constexpr double kRatioBand = 1e3;
inline constexpr int kRatioWindow = 50;
}  // namespace defaults

}  // namespace rbl
