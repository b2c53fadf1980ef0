#pragma once

#include <array>
#include <vector>

#include "pulselearn/common.hpp"
#include "pulselearn/errors.hpp"

namespace pulselearn {

// ------------------------------------------------------------- su(2) maps --

// Pauli components of the principal logarithm: U = exp(-i(aX + bY + cZ)) up
// to global sign, with rotation angle theta = sqrt(a^2+b^2+c^2) in [0, pi].
// Throws AntipodalSingularity near U = -I (axis undefined) and NotUnitary
// when U fails the unitarity tolerance.
struct Su2Log {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};
Su2Log su2_log(const Mat2c& u);

// Inverse map: exp(-i(aX + bY + cZ)) evaluated in closed form.
Mat2c su2_exp(double a, double b, double c);

// Adjoint action of a unitary on the Pauli basis: R_jk = (1/2) Tr(s_j U s_k U+).
// The result is the SO(3) rotation covered by +/-U.
Mat3r so3_from_su2(const Mat2c& u);

// -------------------------------------------------------- 3x3 polar factor --

// Nearest special-orthogonal matrix to B in Frobenius norm, via SVD with a
// determinant fix on the weakest singular direction.  Throws Singular when
// sigma_min <= 1e-12.
Mat3r polar3(const Mat3r& b);

// ------------------------------------------------------------- quaternions --

struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Unit quaternion covering the rotation R, normalized to w >= 0.  Uses the
// largest-diagonal branch when Tr R is near -1 (w ~ 0).
Quaternion quat_from_rotation(const Mat3r& r);

// SU(2) lift U = wI - i(xX + yY + zZ); so3_from_su2(U) reproduces R.
Mat2c su2_from_quat(const Quaternion& q);

// ------------------------------------------------- midpoint-grid transform --

// Inverse DFT of matrix samples taken on the full-circle midpoint grid
// theta_j = (2j+1)pi/Ntilde, j = 0..Ntilde-1 with Ntilde = 4N.  Returns the
// coefficients C_k of f(theta) = sum_k C_k e^{ik theta} for k = -L..L,
// stored at index k + L.  Direct O(Ntilde * L) evaluation per matrix entry;
// the residual midpoint phase e^{ik pi/Ntilde} is stripped.  Throws
// AliasingRisk when N <= L.
std::vector<Mat2c> midpoint_idft(const std::vector<Mat2c>& samples, int L);

// ------------------------------------------------------------------ spline --

// Solves a tridiagonal system in place: lower/upper are the sub/super
// diagonals (length n-1), diag length n, rhs length n.  Thomas algorithm;
// no pivoting (all uses here are diagonally dominant).
std::vector<double> solve_tridiagonal(std::vector<double> lower,
                                      std::vector<double> diag,
                                      std::vector<double> upper,
                                      std::vector<double> rhs);

// Natural cubic spline through (knots[i], values[i]): interpolates exactly,
// second derivative zero at both ends.  eval/deriv outside the knot range
// extend the first/last cubic piece as a polynomial (documented behavior,
// used for boundary cells downstream).
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> knots, std::vector<double> values);

  double eval(double t) const;
  double deriv(double t) const;

  const std::vector<double>& knots() const { return knots_; }

 private:
  int segment_of(double t) const;

  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> m2_;  // second derivatives at knots (natural BC)
};

// Factory matching the module surface; throws InsufficientPoints (< 3 knots)
// and NonMonotonicKnots.
CubicSpline natural_cubic_spline(const std::vector<double>& knots,
                                 const std::vector<double>& values);

}  // namespace pulselearn
