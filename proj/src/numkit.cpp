#include "pulselearn/numkit.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace pulselearn {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::AntipodalSingularity: return "AntipodalSingularity";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::AliasingRisk: return "AliasingRisk";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::DegenerateCoefficient: return "DegenerateCoefficient";
    case ErrorCode::MagnusRangeViolation: return "MagnusRangeViolation";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::MismatchedConfig: return "MismatchedConfig";
    case ErrorCode::ReferenceIllConditioned: return "ReferenceIllConditioned";
    case ErrorCode::PolarSingular: return "PolarSingular";
    case ErrorCode::SingularFIM: return "SingularFIM";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::NonMonotonicKnots: return "NonMonotonicKnots";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
  }
  return "UnknownError";
}

// ------------------------------------------------------------- su(2) maps --

Su2Log su2_log(const Mat2c& u) {
  if (unitarity_defect(u) > 1e-8) {
    throw Error(ErrorCode::NotUnitary, "su2_log input fails U+U = I check");
  }
  if ((u + Mat2c::Identity()).norm() < 1e-8) {
    throw Error(ErrorCode::AntipodalSingularity,
                "su2_log at U = -I: rotation axis undefined");
  }
  double cos_theta = 0.5 * u.trace().real();
  cos_theta = std::min(1.0, std::max(-1.0, cos_theta));
  const double theta = std::acos(cos_theta);

  // a = -(theta/(2i sin theta)) Tr(UX) and cyclically for b, c.  Near
  // theta = 0 the ratio theta/sin(theta) is evaluated by series.
  double ratio;  // theta / (2 sin theta)
  if (theta < 1e-6) {
    const double t2 = theta * theta;
    ratio = 0.5 * (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0);
  } else {
    ratio = 0.5 * theta / std::sin(theta);
  }
  Su2Log out;
  out.a = ratio * (kImag * (u * pauli_x()).trace()).real();
  out.b = ratio * (kImag * (u * pauli_y()).trace()).real();
  out.c = ratio * (kImag * (u * pauli_z()).trace()).real();
  return out;
}

Mat2c su2_exp(double a, double b, double c) {
  const double theta = std::sqrt(a * a + b * b + c * c);
  double sinc;  // sin(theta)/theta
  if (theta < 1e-8) {
    sinc = 1.0 - theta * theta / 6.0;
  } else {
    sinc = std::sin(theta) / theta;
  }
  Mat2c gen = a * pauli_x() + b * pauli_y() + c * pauli_z();
  return std::cos(theta) * Mat2c::Identity() - kImag * sinc * gen;
}

Mat3r so3_from_su2(const Mat2c& u) {
  Mat3r r;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      r(j, k) = 0.5 * (pauli(j) * u * pauli(k) * u.adjoint()).trace().real();
    }
  }
  return r;
}

// -------------------------------------------------------- 3x3 polar factor --

Mat3r polar3(const Mat3r& b) {
  Eigen::JacobiSVD<Mat3r> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()(2) <= 1e-12) {
    throw Error(ErrorCode::Singular, "polar3 input has sigma_min <= 1e-12");
  }
  Mat3r u = svd.matrixU();
  const Mat3r v = svd.matrixV();
  if ((u * v.transpose()).determinant() < 0.0) {
    u.col(2) *= -1.0;  // flip the weakest singular direction: det -> +1
  }
  return u * v.transpose();
}

// ------------------------------------------------------------- quaternions --

Quaternion quat_from_rotation(const Mat3r& r) {
  if ((r.transpose() * r - Mat3r::Identity()).norm() > 1e-8 ||
      std::abs(r.determinant() - 1.0) > 1e-8) {
    throw Error(ErrorCode::NotUnitary, "quat_from_rotation input not in SO(3)");
  }
  Quaternion q;
  const double tr = r.trace();
  if (tr > 0.0) {
    const double s = std::sqrt(1.0 + tr) * 2.0;  // s = 4w
    q.w = 0.25 * s;
    q.x = (r(2, 1) - r(1, 2)) / s;
    q.y = (r(0, 2) - r(2, 0)) / s;
    q.z = (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
    const double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
    q.w = (r(2, 1) - r(1, 2)) / s;
    q.x = 0.25 * s;
    q.y = (r(0, 1) + r(1, 0)) / s;
    q.z = (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) >= r(2, 2)) {
    const double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2.0;
    q.w = (r(0, 2) - r(2, 0)) / s;
    q.x = (r(0, 1) + r(1, 0)) / s;
    q.y = 0.25 * s;
    q.z = (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2.0;
    q.w = (r(1, 0) - r(0, 1)) / s;
    q.x = (r(0, 2) + r(2, 0)) / s;
    q.y = (r(1, 2) + r(2, 1)) / s;
    q.z = 0.25 * s;
  }
  // Normalize exactly and fix the double-cover representative to w >= 0.
  const double n = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
  double sign = (q.w < 0.0) ? -1.0 : 1.0;
  q.w = sign * q.w / n;
  q.x = sign * q.x / n;
  q.y = sign * q.y / n;
  q.z = sign * q.z / n;
  return q;
}

Mat2c su2_from_quat(const Quaternion& q) {
  Mat2c u;
  u << Complex(q.w, -q.z), Complex(-q.y, -q.x),
       Complex(q.y, -q.x), Complex(q.w, q.z);
  return u;
}

// ------------------------------------------------- midpoint-grid transform --

std::vector<Mat2c> midpoint_idft(const std::vector<Mat2c>& samples, int L) {
  const int n_tilde = static_cast<int>(samples.size());
  if (n_tilde % 4 != 0 || n_tilde / 4 <= L) {
    throw Error(ErrorCode::AliasingRisk,
                "midpoint_idft needs Ntilde = 4N samples with N > L");
  }
  std::vector<Mat2c> coeffs(2 * L + 1);
  for (int k = -L; k <= L; ++k) {
    Mat2c acc = Mat2c::Zero();
    for (int j = 0; j < n_tilde; ++j) {
      const double phase = -2.0 * kPi * static_cast<double>(j) * k / n_tilde;
      acc += samples[j] * Complex(std::cos(phase), std::sin(phase));
    }
    acc /= static_cast<double>(n_tilde);
    // Remove the residual half-cell phase of the midpoint grid.
    const double shift = -kPi * k / n_tilde;
    coeffs[k + L] = acc * Complex(std::cos(shift), std::sin(shift));
  }
  return coeffs;
}

// ------------------------------------------------------------------ spline --

std::vector<double> solve_tridiagonal(std::vector<double> lower,
                                      std::vector<double> diag,
                                      std::vector<double> upper,
                                      std::vector<double> rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = lower[i - 1] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
  }
  return x;
}

CubicSpline::CubicSpline(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  const std::size_t n = knots_.size();
  m2_.assign(n, 0.0);
  if (n < 3) return;  // validated by the factory
  // Natural-boundary tridiagonal system for the interior second derivatives.
  const std::size_t m = n - 2;
  std::vector<double> lower(m - 1), diag(m), upper(m - 1), rhs(m);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = knots_[i] - knots_[i - 1];
    const double h1 = knots_[i + 1] - knots_[i];
    const std::size_t r = i - 1;
    diag[r] = (h0 + h1) / 3.0;
    if (r > 0) lower[r - 1] = h0 / 6.0;
    if (r + 1 < m) upper[r] = h1 / 6.0;
    rhs[r] = (values_[i + 1] - values_[i]) / h1 -
             (values_[i] - values_[i - 1]) / h0;
  }
  const std::vector<double> sol =
      solve_tridiagonal(std::move(lower), std::move(diag), std::move(upper),
                        std::move(rhs));
  for (std::size_t r = 0; r < m; ++r) m2_[r + 1] = sol[r];
}

int CubicSpline::segment_of(double t) const {
  const int n = static_cast<int>(knots_.size());
  if (t <= knots_.front()) return 0;  // polynomial extension of first piece
  if (t >= knots_.back()) return n - 2;
  int lo = 0;
  int hi = n - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (knots_[mid] <= t ? lo : hi) = mid;
  }
  return lo;
}

double CubicSpline::eval(double t) const {
  const int i = segment_of(t);
  const double h = knots_[i + 1] - knots_[i];
  const double d1 = knots_[i + 1] - t;
  const double d0 = t - knots_[i];
  return m2_[i] * d1 * d1 * d1 / (6.0 * h) +
         m2_[i + 1] * d0 * d0 * d0 / (6.0 * h) +
         (values_[i] / h - m2_[i] * h / 6.0) * d1 +
         (values_[i + 1] / h - m2_[i + 1] * h / 6.0) * d0;
}

double CubicSpline::deriv(double t) const {
  const int i = segment_of(t);
  const double h = knots_[i + 1] - knots_[i];
  const double d1 = knots_[i + 1] - t;
  const double d0 = t - knots_[i];
  return -m2_[i] * d1 * d1 / (2.0 * h) + m2_[i + 1] * d0 * d0 / (2.0 * h) -
         (values_[i] / h - m2_[i] * h / 6.0) +
         (values_[i + 1] / h - m2_[i + 1] * h / 6.0);
}

CubicSpline natural_cubic_spline(const std::vector<double>& knots,
                                 const std::vector<double>& values) {
  if (knots.size() < 3 || knots.size() != values.size()) {
    throw Error(ErrorCode::InsufficientPoints,
                "natural_cubic_spline needs >= 3 matching knots/values");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i] > knots[i - 1])) {
      throw Error(ErrorCode::NonMonotonicKnots,
                  "natural_cubic_spline knots must strictly increase");
    }
  }
  return CubicSpline(knots, values);
}

}  // namespace pulselearn
