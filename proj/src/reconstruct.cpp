#include "pulselearn/reconstruct.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pulselearn {

namespace {

// Remove artificial 2*pi jumps between consecutive raw phases so the spline
// interpolates a continuous branch.
std::vector<double> unwrap(const PhaseVector& raw) {
  std::vector<double> out(raw.begin(), raw.end());
  double offset = 0.0;
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double jump = out[i] + offset - out[i - 1];
    if (jump > kPi) {
      offset -= 2.0 * kPi * std::round(jump / (2.0 * kPi));
    } else if (jump < -kPi) {
      offset += 2.0 * kPi * std::round(-jump / (2.0 * kPi));
    }
    out[i] += offset;
  }
  return out;
}

void require_min_cells(const PhaseVector& raw, int min_cells) {
  if (static_cast<int>(raw.size()) < min_cells) {
    throw Error(ErrorCode::TooFewPoints,
                "need at least " + std::to_string(min_cells) +
                    " cells, got " + std::to_string(raw.size()));
  }
}

}  // namespace

std::vector<double> de_average(const PhaseVector& raw, DeAverageOrder order) {
  if (order == DeAverageOrder::Second) {
    return std::vector<double>(raw.begin(), raw.end());
  }
  const int n = static_cast<int>(raw.size());
  if (n < 3) {
    throw Error(ErrorCode::TooFewPoints,
                "fourth-order de-averaging needs at least 3 cells");
  }
  std::vector<double> out(raw.begin(), raw.end());
  for (int i = 1; i + 1 < n; ++i) {
    out[i] = raw[i] - (raw[i - 1] - 2.0 * raw[i] + raw[i + 1]) / 24.0;
  }
  if (n == 3) {
    // Only one interior second difference available; reuse it at both ends
    // (one order lower there, but no wider stencil exists).
    const double d2 = raw[0] - 2.0 * raw[1] + raw[2];
    out[0] = raw[0] - d2 / 24.0;
    out[2] = raw[2] - d2 / 24.0;
  } else {
    out[0] = raw[0] -
             (2.0 * raw[0] - 5.0 * raw[1] + 4.0 * raw[2] - raw[3]) / 24.0;
    out[n - 1] = raw[n - 1] - (2.0 * raw[n - 1] - 5.0 * raw[n - 2] +
                               4.0 * raw[n - 3] - raw[n - 4]) /
                                  24.0;
  }
  return out;
}

const char* method_name(ReconstructionMethod m) {
  switch (m) {
    case ReconstructionMethod::DirectMidpoint:
      return "direct-midpoint";
    case ReconstructionMethod::RefinedMidpoint:
      return "refined-midpoint";
    case ReconstructionMethod::Differentiating:
      return "differentiating";
  }
  return "unknown";
}

double ReconstructedPulse::eval(double t) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < splines_.size(); ++i) {
    acc += weights_[i] *
           (use_deriv_ ? splines_[i].deriv(t) : splines_[i].eval(t));
  }
  return acc;
}

ReconstructedPulse reconstruct_midpoint(const PhaseVector& raw, double T,
                                        DeAverageOrder order) {
  require_min_cells(raw, 4);
  const int L = static_cast<int>(raw.size());
  const double h = T / L;
  const std::vector<double> vals = de_average(unwrap(raw), order);
  std::vector<double> knots(L);
  for (int i = 0; i < L; ++i) knots[i] = (i + 0.5) * h;

  ReconstructedPulse out;
  out.method_ = (order == DeAverageOrder::Fourth)
                    ? ReconstructionMethod::RefinedMidpoint
                    : ReconstructionMethod::DirectMidpoint;
  out.L_ = L;
  out.T_ = T;
  out.use_deriv_ = false;
  out.weights_ = {1.0};
  out.splines_.push_back(natural_cubic_spline(knots, vals));
  return out;
}

ReconstructedPulse reconstruct_differentiating(const PhaseVector& raw,
                                               double T) {
  require_min_cells(raw, 4);
  const int L = static_cast<int>(raw.size());
  const double h = T / L;
  const std::vector<double> u = unwrap(raw);
  std::vector<double> knots(L + 1);
  std::vector<double> prefix(L + 1);
  knots[0] = 0.0;
  prefix[0] = 0.0;
  for (int j = 1; j <= L; ++j) {
    knots[j] = j * h;
    prefix[j] = prefix[j - 1] + h * u[j - 1];
  }

  ReconstructedPulse out;
  out.method_ = ReconstructionMethod::Differentiating;
  out.L_ = L;
  out.T_ = T;
  out.use_deriv_ = true;
  out.weights_ = {1.0};
  out.splines_.push_back(natural_cubic_spline(knots, prefix));
  return out;
}

ReconstructedPulse richardson(const ReconstructedPulse& f_h,
                              const ReconstructedPulse& f_h2) {
  if (f_h2.L_ != 2 * f_h.L_ || f_h2.method_ != f_h.method_ ||
      std::abs(f_h2.T_ - f_h.T_) > 1e-12 ||
      f_h2.use_deriv_ != f_h.use_deriv_) {
    throw Error(ErrorCode::MismatchedConfig,
                "extrapolation needs an (L, 2L) pair of the same method and "
                "duration");
  }
  ReconstructedPulse out;
  out.method_ = f_h2.method_;
  out.L_ = f_h2.L_;
  out.T_ = f_h2.T_;
  out.re_applied_ = true;
  out.use_deriv_ = f_h2.use_deriv_;
  for (std::size_t i = 0; i < f_h2.splines_.size(); ++i) {
    out.weights_.push_back(2.0 * f_h2.weights_[i]);
    out.splines_.push_back(f_h2.splines_[i]);
  }
  for (std::size_t i = 0; i < f_h.splines_.size(); ++i) {
    out.weights_.push_back(-f_h.weights_[i]);
    out.splines_.push_back(f_h.splines_[i]);
  }
  return out;
}

ErrorReport error_report(const ReconstructedPulse& est, const Pulse& truth,
                         int n_grid) {
  if (n_grid < 100) {
    throw std::invalid_argument("error_report: n_grid must be >= 100");
  }
  const double T = est.T();
  const double margin = T / est.L();
  ErrorReport report;
  report.table.reserve(n_grid);
  double sum_abs = 0.0;
  for (int i = 0; i < n_grid; ++i) {
    const double t = T * static_cast<double>(i) / (n_grid - 1);
    ErrorTableRow row;
    row.t = t;
    row.phi_true = truth.eval(t);
    row.phi_est = est.eval(t);
    row.abs_err = std::abs(row.phi_est - row.phi_true);
    sum_abs += row.abs_err;
    if (row.abs_err > report.sup_full) report.sup_full = row.abs_err;
    if (t >= margin - 1e-12 && t <= T - margin + 1e-12 &&
        row.abs_err > report.sup_interior) {
      report.sup_interior = row.abs_err;
    }
    report.table.push_back(row);
  }
  report.mean_abs = sum_abs / n_grid;
  return report;
}

}  // namespace pulselearn
