#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pulselearn/common.hpp"
#include "pulselearn/errors.hpp"

namespace pulselearn {

// Discretized pulse values psi_j in radians; entry 0 acts first in time.
using PhaseVector = std::vector<double>;

enum class PulseKind {
  Linear,             // phi(t) = alpha * t
  Sinusoid,           // phi(t) = sum_i amp_i * sin(2 pi freq_i t)
  Biharmonic,         // phi(t) = (sin(2 pi t) + sin(4 pi t)) / 2
  PiecewiseConstant,  // L_pc uniform cells over [0, T]
  Perturbed,          // base pulse + smoothed random offset table
};

// Immutable real-valued control pulse on [0, T].  Analytic families carry
// closed-form cell averages; the perturbed family adds a deterministic
// fine-grid table (linearly interpolated) on top of a base pulse.
class Pulse {
 public:
  static Pulse linear(double alpha, double T = 1.0);
  static Pulse sinusoid(std::vector<double> amplitudes,
                        std::vector<double> frequencies, double T = 1.0);
  static Pulse sin3pi(double T = 1.0);  // sin(3 pi t): frequency 1.5
  static Pulse biharmonic(double T = 1.0);
  static Pulse piecewise_constant(std::vector<double> values, double T = 1.0);
  static Pulse constant(double value, double T = 1.0);

  double eval(double t) const;  // OutOfDomain outside [0, T]
  double T() const { return T_; }
  PulseKind kind() const { return kind_; }
  double beta_hint() const { return beta_hint_; }

  // Canonical one-line description of the pulse and its parameters; stable
  // across runs, used for config hashing and run manifests.
  std::string description() const;

  // Exact integral of the pulse over [a, b] within [0, T]; closed form for
  // every family (piecewise-linear tables integrate exactly as trapezoids).
  double integral(double a, double b) const;

  // Perturbation metadata (Perturbed kind only).
  const std::vector<double>& perturbation_table() const { return table_; }

  friend Pulse perturb(const Pulse& base, std::uint64_t seed, int L_perturb,
                       double eta, double w);

 private:
  Pulse() = default;

  PulseKind kind_ = PulseKind::Linear;
  double T_ = 1.0;
  double beta_hint_ = 1.0;
  double alpha_ = 0.0;                  // Linear
  std::vector<double> amps_, freqs_;    // Sinusoid
  std::vector<double> pc_values_;       // PiecewiseConstant
  std::shared_ptr<const Pulse> base_;   // Perturbed
  std::vector<double> table_;           // Perturbed: offsets at uniform nodes
};

// Cell averages (1/h) * integral over [t_{j-1}, t_j], h = T/L.
struct SegmentAverages {
  std::vector<double> values;
  double h = 0.0;
};

SegmentAverages segment_averages(const Pulse& p, int L);

// Piecewise-constant random offsets (uniform in [-eta, eta] on L_perturb
// cells) convolved with a Gaussian window of width w (truncated at 4w and
// renormalized over the in-domain mass), tabulated on a uniform fine grid of
// max(1000, 20 L_perturb) intervals.  Deterministic given the seed.
Pulse perturb(const Pulse& base, std::uint64_t seed, int L_perturb, double eta,
              double w);

}  // namespace pulselearn
