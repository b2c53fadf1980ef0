#include "pulselearn/fisher.hpp"

#include <cmath>
#include <stdexcept>

namespace pulselearn {

namespace {

Mat2c v_factor(double theta, double psi) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat2c v;
  v << c, -kImag * s * std::exp(Complex(0, -psi)),
       -kImag * s * std::exp(Complex(0, psi)), c;
  return v;
}

// Grid cosine sum K(d) = sum_n cos(2 d theta_n) in closed form.
double cosine_sum(int d, int N, double nu, FimGrid grid) {
  if (d == 0) return static_cast<double>(N);
  const double x = std::abs(d) * nu / N;  // even in d
  const double sx = std::sin(x);
  if (grid == FimGrid::Endpoint) {
    if (std::abs(sx) < 1e-10) return static_cast<double>(N);
    return std::cos((N + 1.0) * x) * std::sin(N * x) / sx;
  }
  // Midpoint: theta_n = (2n - 1) x / 2, so the degenerate direction is
  // cos((2n-1) m pi) = cos(m pi) for every n.
  if (std::abs(sx) < 1e-10) return N * std::cos(x);
  return std::sin(2.0 * std::abs(d) * nu) / (2.0 * sx);
}

std::vector<double> toeplitz_band(int L, int N, double nu, double M,
                                  FimGrid grid) {
  std::vector<double> s(L);
  for (int d = 0; d < L; ++d) {
    s[d] = 0.25 * M *
           (2.0 * cosine_sum(d, N, nu, grid) - cosine_sum(d + 1, N, nu, grid) -
            cosine_sum(d - 1, N, nu, grid));
  }
  return s;
}

// integral_0^nu sin^2(theta) cos(2 d theta) d theta in closed form.
double continuum_integral(int d, double nu) {
  if (d == 0) return 0.5 * nu - 0.25 * std::sin(2.0 * nu);
  const double lead = std::sin(2.0 * d * nu) / (4.0 * d);
  const double up = std::sin(2.0 * (d + 1.0) * nu) / (8.0 * (d + 1.0));
  const double down = (d == 1) ? 0.25 * nu
                               : std::sin(2.0 * (d - 1.0) * nu) /
                                     (8.0 * (d - 1.0));
  return lead - up - down;
}

}  // namespace

FIMatrix fim_numeric(const PhaseVector& psis, const std::vector<double>& thetas,
                     double M) {
  const int L = static_cast<int>(psis.size());
  const Mat2c z = pauli_z();
  FIMatrix out;
  out.m = Eigen::MatrixXd::Zero(L, L);
  out.M = M;
  out.N = static_cast<int>(thetas.size());
  out.nu = thetas.empty() ? 0.0 : thetas.back();
  out.L = L;

  std::vector<Mat2c> v(L), pre(L), suf(L);
  for (double theta : thetas) {
    for (int k = 0; k < L; ++k) v[k] = v_factor(theta, psis[k]);
    pre[0] = Mat2c::Identity();
    for (int k = 1; k < L; ++k) pre[k] = v[k - 1] * pre[k - 1];
    suf[L - 1] = Mat2c::Identity();
    for (int k = L - 2; k >= 0; --k) suf[k] = suf[k + 1] * v[k + 1];

    // Top rows of d W / d psi_k; only |0> components enter the information.
    std::vector<Eigen::RowVector2cd> rows(L);
    for (int k = 0; k < L; ++k) {
      const Mat2c dv = -0.5 * kImag * (z * v[k] - v[k] * z);
      rows[k] = (suf[k] * dv * pre[k]).row(0);
    }
    for (int i = 0; i < L; ++i) {
      for (int j = i; j < L; ++j) {
        const double val = M * (rows[i] * rows[j].adjoint())(0, 0).real();
        out.m(i, j) += val;
        if (j != i) out.m(j, i) += val;
      }
    }
  }
  return out;
}

FIMatrix fim_toeplitz_constant(int L, int N, double nu, double M,
                               FimGrid grid) {
  const std::vector<double> s = toeplitz_band(L, N, nu, M, grid);
  FIMatrix out;
  out.m = Eigen::MatrixXd::Zero(L, L);
  out.M = M;
  out.N = N;
  out.nu = nu;
  out.L = L;
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) out.m(i, j) = s[std::abs(i - j)];
  }
  return out;
}

std::pair<FIMatrix, Eigen::MatrixXd> fim_exact_solvable(int L, int N, double M,
                                                        int r) {
  FIMatrix f;
  f.m = Eigen::MatrixXd::Zero(L, L);
  f.M = M;
  f.N = N;
  f.nu = r * kPi / 2.0;
  f.L = L;
  const double mn = M * N;
  for (int i = 0; i < L; ++i) {
    f.m(i, i) = 0.5 * mn;
    if (i + 1 < L) {
      f.m(i, i + 1) = -0.25 * mn;
      f.m(i + 1, i) = -0.25 * mn;
    }
  }
  Eigen::MatrixXd inv(L, L);
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      const double a = i + 1.0;
      const double b = j + 1.0;
      inv(i, j) = (4.0 / mn) * (std::min(a, b) - a * b / (L + 1.0));
    }
  }
  if ((f.m * inv - Eigen::MatrixXd::Identity(L, L)).cwiseAbs().maxCoeff() >
      1e-10) {
    throw std::logic_error("closed-form tridiagonal inverse failed its check");
  }
  return {f, inv};
}

std::vector<double> dfi_sweep(int L, double M, int N,
                              const std::vector<double>& nus) {
  constexpr double kFloor = 1e-14;
  std::vector<double> out;
  out.reserve(nus.size());
  for (double nu : nus) {
    const FIMatrix f = fim_toeplitz_constant(L, N, nu, M, FimGrid::Endpoint);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(f.m);
    double log_sum = 0.0;
    bool degenerate = false;
    for (int i = 0; i < L; ++i) {
      const double lambda = es.eigenvalues()(i);
      if (lambda <= 0.0) {
        degenerate = true;
        break;
      }
      log_sum += std::log(lambda);
    }
    const double dfi =
        degenerate ? 0.0 : std::exp(log_sum / L) / (M * N);
    out.push_back(std::max(dfi, kFloor));
  }
  return out;
}

FIMatrix fim_continuum(int L, double M, int N, double nu) {
  FIMatrix out;
  out.m = Eigen::MatrixXd::Zero(L, L);
  out.M = M;
  out.N = N;
  out.nu = nu;
  out.L = L;
  const double scale = M * N / nu;
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      out.m(i, j) = scale * continuum_integral(std::abs(i - j), nu);
    }
  }
  return out;
}

std::pair<double, double> loewner_check(int L, double M, int N, double nu) {
  const FIMatrix f = fim_continuum(L, M, N, nu);
  Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(L, L);
  for (int i = 0; i < L; ++i) {
    d2(i, i) = 2.0;
    if (i + 1 < L) {
      d2(i, i + 1) = -1.0;
      d2(i + 1, i) = -1.0;
    }
  }
  const double c_low = kPi * M * N / (8.0 * nu);
  const double c_high = kPi * M * N / (4.0 * nu);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> lo(f.m - c_low * d2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hi(c_high * d2 - f.m);
  return {lo.eigenvalues().minCoeff(), hi.eigenvalues().minCoeff()};
}

CrlbReport crlb_report(const FIMatrix& f) {
  const int L = f.L;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(f.m);
  const double lambda_max = es.eigenvalues().maxCoeff();
  if (es.eigenvalues().minCoeff() <= 1e-12 * std::max(lambda_max, 1.0)) {
    throw Error(ErrorCode::SingularFIM,
                "information matrix is numerically singular");
  }
  const Eigen::MatrixXd cov = es.eigenvectors() *
                              es.eigenvalues().cwiseInverse().asDiagonal() *
                              es.eigenvectors().transpose();
  CrlbReport report;
  report.variance_floor.resize(L);
  for (int i = 0; i < L; ++i) report.variance_floor[i] = cov(i, i);
  if (L < 2) {
    report.correlation_defined = false;
    return report;
  }
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < L; ++i) {
    for (int j = i + 1; j < L; ++j) {
      num += cov(i, j);
      den += std::sqrt(cov(i, i) * cov(j, j));
    }
  }
  report.avg_correlation = num / den;
  return report;
}

}  // namespace pulselearn
