#pragma once

// Shared, self-contained reference implementations used only by the tests.
// These deliberately avoid the library's own code paths wherever they serve
// as independent oracles (direct product evaluation, brute-force expansions,
// least-squares slope fits).

#include <cmath>
#include <vector>

#include "pulselearn/common.hpp"
#include "pulselearn/rng.hpp"

namespace oracles {

using pulselearn::Complex;
using pulselearn::kImag;
using pulselearn::kPi;
using pulselearn::Mat2c;
using pulselearn::Mat3r;

// Least-squares slope of log(y) vs log(x).
inline double loglog_slope(const std::vector<double>& xs,
                           const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// One interleaved factor: V(theta, psi) = e^{-i psi Z/2} e^{-i theta X} e^{i psi Z/2}.
inline Mat2c v_factor(double theta, double psi) {
  Mat2c rz_m, rx, rz_p;
  const Complex em = std::exp(Complex(0, -0.5 * psi));
  const Complex ep = std::exp(Complex(0, 0.5 * psi));
  rz_m << em, 0, 0, ep;
  rz_p << ep, 0, 0, em;
  rx << std::cos(theta), Complex(0, -std::sin(theta)),
        Complex(0, -std::sin(theta)), std::cos(theta);
  return rz_m * rx * rz_p;
}

// Direct product evaluation W(theta) = V(psi_L) ... V(psi_1).
inline Mat2c eval_w_direct(double theta, const std::vector<double>& psis) {
  Mat2c w = Mat2c::Identity();
  for (double psi : psis) w = v_factor(theta, psi) * w;
  return w;
}

inline Mat2c projector_p(double psi) {
  return 0.5 * (Mat2c::Identity() - std::cos(psi) * pulselearn::pauli_x() -
                std::sin(psi) * pulselearn::pauli_y());
}

// Brute-force Fourier coefficients of W by expanding the product over all
// 2^L branch choices e^{+i theta} P vs e^{-i theta} Q.  Returns C_k at
// index k + L.  Exponential cost; use only for small L.
inline std::vector<Mat2c> brute_force_w_coeffs(const std::vector<double>& psis) {
  const int L = static_cast<int>(psis.size());
  std::vector<Mat2c> coeffs(2 * L + 1, Mat2c::Zero());
  for (unsigned mask = 0; mask < (1u << L); ++mask) {
    Mat2c term = Mat2c::Identity();
    int k = 0;
    // Factor i = 0 is the leftmost factor V(psi_L).
    for (int i = 0; i < L; ++i) {
      const double psi = psis[L - 1 - i];
      const Mat2c p = projector_p(psi);
      if (mask & (1u << i)) {
        term = term * p;
        ++k;
      } else {
        term = term * (Mat2c::Identity() - p);
        --k;
      }
    }
    coeffs[k + L] += term;
  }
  return coeffs;
}

// Random su(2) rotation with angle bounded away from pi.
inline Mat2c random_su2(pulselearn::Rng& rng, double max_angle = kPi - 0.2) {
  const double theta = rng.uniform(0.0, max_angle);
  double nx = rng.normal(), ny = rng.normal(), nz = rng.normal();
  const double n = std::sqrt(nx * nx + ny * ny + nz * nz);
  nx /= n;
  ny /= n;
  nz /= n;
  Mat2c gen = nx * pulselearn::pauli_x() + ny * pulselearn::pauli_y() +
              nz * pulselearn::pauli_z();
  return std::cos(theta) * Mat2c::Identity() - kImag * std::sin(theta) * gen;
}

}  // namespace oracles
