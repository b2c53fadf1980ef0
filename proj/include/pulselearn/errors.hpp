#pragma once

#include <stdexcept>
#include <string>

namespace pulselearn {

// Failure taxonomy shared by every module.  Each value names one specific
// contract violation so tests and callers can match on the code instead of
// parsing message strings.
enum class ErrorCode {
  AntipodalSingularity,    // su(2) log at trace = -2: rotation axis undefined
  NotUnitary,              // unitarity / orthogonality invariant violated
  Singular,                // 3x3 polar input has a (near-)zero singular value
  AliasingRisk,            // Fourier extraction with too few samples (N <= L)
  GridMismatch,            // samples not on the canonical midpoint grid
  DegenerateCoefficient,   // leading Fourier coefficient has vanishing trace
  MagnusRangeViolation,    // digitizer outside its convergence range (w*tau >= pi)
  TooFewPoints,            // stencil/spline needs more data points
  MismatchedConfig,        // extrapolation pair built from incompatible runs
  ReferenceIllConditioned, // reference tomography block not safely invertible
  PolarSingular,           // sandwiched tomography block singular
  SingularFIM,             // Fisher information matrix not invertible
  InsufficientPoints,      // spline requires >= 3 knots
  NonMonotonicKnots,       // spline knots not strictly increasing
  OutOfDomain,             // pulse evaluated outside [0, T]
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pulselearn
