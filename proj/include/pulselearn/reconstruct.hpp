#pragma once

#include <string>
#include <vector>

#include "pulselearn/numkit.hpp"
#include "pulselearn/pulse.hpp"

namespace pulselearn {

enum class DeAverageOrder { Second, Fourth };

// Cell-average -> midpoint-value filter.  Second order returns the data
// unchanged; fourth order applies psi_i - (1/24) * Delta^2 psi_i, i.e. the
// interior stencil (-1/24, 13/12, -1/24), with one-sided fourth-order
// stencils in the two boundary cells.  Requires L >= 3 for fourth order.
std::vector<double> de_average(const PhaseVector& raw, DeAverageOrder order);

enum class ReconstructionMethod { DirectMidpoint, RefinedMidpoint, Differentiating };

const char* method_name(ReconstructionMethod m);

// Continuous estimate of the pulse on [0, T] built from discretized phase
// data; evaluable everywhere (end cubics extended over the boundary cells).
class ReconstructedPulse {
 public:
  double eval(double t) const;

  ReconstructionMethod method() const { return method_; }
  int L() const { return L_; }
  double T() const { return T_; }
  bool re_applied() const { return re_applied_; }

  friend ReconstructedPulse reconstruct_midpoint(const PhaseVector& raw,
                                                 double T, DeAverageOrder order);
  friend ReconstructedPulse reconstruct_differentiating(const PhaseVector& raw,
                                                        double T);
  friend ReconstructedPulse richardson(const ReconstructedPulse& f_h,
                                       const ReconstructedPulse& f_h2);

 private:
  ReconstructedPulse() = default;

  ReconstructionMethod method_ = ReconstructionMethod::DirectMidpoint;
  int L_ = 0;
  double T_ = 0.0;
  bool re_applied_ = false;
  bool use_deriv_ = false;
  std::vector<double> weights_;      // linear combination (Richardson)
  std::vector<CubicSpline> splines_;
};

// Spline through (cell midpoint, de-averaged value) after phase unwrapping.
ReconstructedPulse reconstruct_midpoint(const PhaseVector& raw, double T,
                                        DeAverageOrder order);

// Derivative of the natural spline through the prefix sums (t_j, h * sum psi)
// with (0, 0) prepended, after phase unwrapping.
ReconstructedPulse reconstruct_differentiating(const PhaseVector& raw, double T);

// Bias cancellation 2 f_{h/2} - f_h; requires f_h2.L == 2 f_h.L and matching
// method/duration (MismatchedConfig otherwise).
ReconstructedPulse richardson(const ReconstructedPulse& f_h,
                              const ReconstructedPulse& f_h2);

struct ErrorTableRow {
  double t = 0.0;
  double phi_true = 0.0;
  double phi_est = 0.0;
  double abs_err = 0.0;
};

struct ErrorReport {
  double sup_interior = 0.0;  // over [T/L, T - T/L]
  double sup_full = 0.0;
  double mean_abs = 0.0;
  std::vector<ErrorTableRow> table;
};

ErrorReport error_report(const ReconstructedPulse& est, const Pulse& truth,
                         int n_grid);

}  // namespace pulselearn
