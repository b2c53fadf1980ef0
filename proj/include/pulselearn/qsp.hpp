#pragma once

#include <vector>

#include "pulselearn/numkit.hpp"
#include "pulselearn/pulse.hpp"

namespace pulselearn {

// Experimental samples of the end-to-end unitary at drive angles theta.
// Quadrant sets hold N thetas in (0, pi/2); augmented sets cover [0, 2pi).
struct SampleSet {
  std::vector<double> thetas;
  std::vector<Mat2c> unitaries;
  int L = 0;                 // model degree the samples are meant to resolve
  double noise_sigma = 0.0;  // per-entry complex-Gaussian std equivalent
};

// Canonical first-quadrant midpoint grid theta_j = (2j+1) pi / (4N).
std::vector<double> quadrant_midpoints(int N);

// Interleaved product W(theta) = V(theta, psi_L) ... V(theta, psi_1) with
// V(theta, psi) = e^{-i psi Z/2} e^{-i theta X} e^{i psi Z/2}.
Mat2c build_W(double theta, const PhaseVector& psis);

// Reflect N first-quadrant midpoint samples to all 4N midpoints of [0, 2pi)
// using W(pi - theta) = (-1)^L Z W(theta) Z and W(2pi - theta) = Z W(theta) Z.
// Throws GridMismatch unless the input thetas sit on the canonical grid.
SampleSet augment_full_circle(const SampleSet& samples);

// Fourier coefficients C_k, k = -L..L, of a full-circle sample set.
struct FourierStack {
  std::vector<Mat2c> coeffs;  // index k + L
  int L = 0;
  double noise_sigma = 0.0;

  const Mat2c& at(int k) const { return coeffs[k + L]; }
  Mat2c& at(int k) { return coeffs[k + L]; }
};

FourierStack fourier_coeffs(const SampleSet& full_circle, int L);

// Convenience: exact Fourier stack of the model W(theta, psis).
FourierStack exact_coeffs(const PhaseVector& psis, int N = -1);

enum class SweepDirection { RightToLeft, LeftToRight, Stitched };

// Iterative peel-off estimation: at each stage the top coefficient yields a
// rank-one projector whose azimuth is the next earliest phase; the stack is
// then degree-reduced by C'_k = C_{k-1} Q + C_{k+1} P.  RightToLeft emits
// psi_1 first (reliable early indices); LeftToRight runs the same sweep on
// the transposed stack (reliable late indices); Stitched splices the two at
// index ceil(L/2).
PhaseVector estimate_phases(const FourierStack& coeffs, SweepDirection dir);

// Per-reduction-step gain/curvature diagnostics recorded during a clean
// (noiseless) reduction pass; entry i corresponds to the step that reduces
// degree i+1 to degree i, so index 0 is the final step.
struct VarianceProfile {
  std::vector<double> g;      // linear phase-error gain per step
  std::vector<double> aR;     // squared Frobenius norms of the four
  std::vector<double> aL;     //   noise-channel Riesz representatives
  std::vector<double> aP;
  std::vector<double> aQ;
  std::vector<double> big_b;  // cross-term coefficient B_j
  std::vector<double> rho;    // g^2
  std::vector<double> alpha;  // B_j + (sum of squared norms) / 2
};

VarianceProfile variance_profile(const FourierStack& coeffs,
                                 const PhaseVector& psis);

}  // namespace pulselearn
