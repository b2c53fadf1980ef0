#pragma once

#include "pulselearn/numkit.hpp"
#include "pulselearn/pulse.hpp"

namespace pulselearn {

// Pauli components of the su(2) logarithm of a segment propagator, with the
// interval and drive amplitude it came from.
struct SegmentGenerator {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double omega = 0.0;
};

// Time-ordered propagator of dU/dt = -i w (cos phi(t) X + sin phi(t) Y) U
// over [t1, t2] by classic RK4 with step doubling until the Richardson error
// estimate drops below rtol; the result is re-unitarized by a final 2x2
// polar projection.
Mat2c propagate(const Pulse& p, double omega, double t1, double t2,
                double rtol = 1e-10);

// Closed-form propagator for phi(t) = alpha t:
//   U = R(t2) V(t2 - t1) R(-t1),  R(t) = exp(-i alpha t Z / 2),
//   V(dt) = exp(-i dt (w X - (alpha/2) Z)).
Mat2c linear_pulse_propagator(double alpha, double omega, double t1, double t2);

// su2_log wrapped with interval metadata.
SegmentGenerator extract_generator(const Mat2c& u, double t1, double t2,
                                   double omega);

// Per-cell phase readout psi_j = atan2(b_j, a_j) from the L segment
// propagators of the uniform partition of [0, T].  Requires w T/L < pi.
PhaseVector digitize(const Pulse& p, double omega, int L);

// First two Magnus terms of the segment generator: Omega1 by 1D quadrature
// of (w cos phi, w sin phi); the second term has only a Z component,
//   c2 = -w^2 * integral over {t1 <= s2 <= s1 <= t2} of sin(phi(s1)-phi(s2)).
struct MagnusTerms {
  SegmentGenerator omega1;
  double omega2_c = 0.0;
};

MagnusTerms magnus_terms(const Pulse& p, double omega, double t1, double t2);

// Nearest unitary to a 2x2 matrix (polar factor via SVD).
Mat2c unitary_project(const Mat2c& m);

}  // namespace pulselearn
