#pragma once

#include <cstdint>
#include <vector>

#include "pulselearn/qsp.hpp"

namespace pulselearn {

enum class NoiseKind { BernoulliCounts, GaussianEntries };

// Depolarizing + SPAM + shot-noise model applied in PTM space.
struct NoiseModel {
  double alpha = 1.0;        // depolarizing fidelity in (0, 1]
  Mat3r gS = Mat3r::Zero();  // state-preparation generator, S = exp(gS)
  Mat3r gM = Mat3r::Zero();  // measurement generator, M = exp(gM)
  double delta = 0.0;        // max(||gS||, ||gM||), spectral norm
  bool symmetric_diff = false;
  std::int64_t shots = kInfiniteShots;  // M; kInfiniteShots = exact
  NoiseKind kind = NoiseKind::BernoulliCounts;

  static constexpr std::int64_t kInfiniteShots = -1;

  static NoiseModel none() { return NoiseModel{}; }

  // Seeded SPAM generators scaled to spectral norm delta.  The symmetric
  // variant draws one symmetric direction D (||D|| = delta) and sets
  // gM = D, gS = -D, so the difference (gM - gS)/2 = D is exactly symmetric.
  static NoiseModel with_random_spam(double alpha, double delta,
                                     bool symmetric, std::uint64_t seed,
                                     std::int64_t shots = kInfiniteShots,
                                     NoiseKind kind = NoiseKind::BernoulliCounts);

  bool exact_shots() const { return shots == kInfiniteShots; }
};

// Pauli transfer matrix data reduced to translation + 3x3 block.
struct PTM {
  Vec3 t_vec = Vec3::Zero();
  Mat3r A = Mat3r::Identity();
  bool clamped = false;  // some Born probability left [0, 1] and was clamped
};

// Assemble the PTM of the noisy channel around U from the four canonical
// input states (|0>, |1>, |+>, |+i>), three Pauli expectations each, with
// shot noise per the model.
PTM simulate_expectations(const Mat2c& u, const NoiseModel& noise,
                          std::uint64_t seed);

// Reference-sandwich reconstruction: B = K^{-1/2} A K^{-1/2} with K the
// symmetrized block of the reference (identity-pulse) experiment, followed
// by polar projection and the quaternion lift.  Output sign is the w >= 0
// representative; the true sign is resolved later by alignment.
Mat2c robust_reconstruct(const PTM& target, const PTM& reference);

// Threshold continuity alignment: walking up the (ascending) omega sequence,
// flip U_i whenever the spectral gap to the previous aligned element is >= 1.
std::vector<Mat2c> align_signs(const std::vector<double>& omegas,
                               const std::vector<Mat2c>& unitaries);

// Full simulated experiment suite for pulse learning: propagate + corrupt +
// tomograph + reconstruct at the quadrature drives omega_j = theta_j L / T
// (theta_j the canonical quadrant midpoints, N = L + 1), plus the omega = 0
// reference.  Consecutive quadrature drives sit too far apart for threshold
// alignment, so auxiliary alignment-only experiments subdivide each omega
// interval until gaps satisfy |Delta omega| T <= 0.4; the chain is aligned
// from the reference upward and only quadrature nodes are emitted.
SampleSet run_experiment_suite(const Pulse& p, int L, double T,
                               const NoiseModel& noise, std::uint64_t seed,
                               int jobs = 1);

}  // namespace pulselearn
