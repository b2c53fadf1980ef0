#include "pulselearn/dynamics.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace pulselearn {

namespace {

// -i H(t) with H = omega (cos phi X + sin phi Y).
Mat2c minus_i_h(const Pulse& p, double omega, double t) {
  const double phi = p.eval(t);
  Mat2c h = omega * (std::cos(phi) * pauli_x() + std::sin(phi) * pauli_y());
  return -kImag * h;
}

Mat2c rk4_run(const Pulse& p, double omega, double t1, double t2, int steps) {
  const double h = (t2 - t1) / steps;
  Mat2c u = Mat2c::Identity();
  for (int i = 0; i < steps; ++i) {
    const double t = t1 + i * h;
    const Mat2c k1 = minus_i_h(p, omega, t) * u;
    const Mat2c k2 = minus_i_h(p, omega, t + 0.5 * h) * (u + 0.5 * h * k1);
    const Mat2c k3 = minus_i_h(p, omega, t + 0.5 * h) * (u + 0.5 * h * k2);
    const Mat2c k4 = minus_i_h(p, omega, t + h) * (u + h * k3);
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

// 32-point Gauss-Legendre nodes/weights on [-1, 1] (abscissae symmetric).
struct Gauss32 {
  double node[32];
  double weight[32];
  Gauss32() {
    static const double x[16] = {
        0.0483076656877383162348126, 0.1444719615827964934851864,
        0.2392873622521370745446032, 0.3318686022821276497799168,
        0.4213512761306353453641194, 0.5068999089322293900237475,
        0.5877157572407623290407455, 0.6630442669302152009751152,
        0.7321821187402896803874267, 0.7944837959679424069630973,
        0.8493676137325699701336930, 0.8963211557660521239653072,
        0.9349060759377396891709191, 0.9647622555875064307738119,
        0.9856115115452683354001750, 0.9972638618494815635449811};
    static const double w[16] = {
        0.0965400885147278005667648, 0.0956387200792748594190820,
        0.0938443990808045656391802, 0.0911738786957638847128686,
        0.0876520930044038111427715, 0.0833119242269467552221991,
        0.0781938957870703064717409, 0.0723457941088485062253994,
        0.0658222227763618468376501, 0.0586840934785355471452836,
        0.0509980592623761761961632, 0.0428358980222266806568786,
        0.0342738629130214331026877, 0.0253920653092620594557526,
        0.0162743947309056706051706, 0.0070186100094700966004071};
    for (int i = 0; i < 16; ++i) {
      node[i] = -x[15 - i];
      node[16 + i] = x[i];
      weight[i] = w[15 - i];
      weight[16 + i] = w[i];
    }
  }
};

const Gauss32& gauss32() {
  static const Gauss32 g;
  return g;
}

// Adaptive 1D quadrature: composite 32-point Gauss-Legendre with panel
// doubling until successive estimates agree to the tolerance.
template <class F>
double integrate_1d(F&& f, double a, double b, double tol = 1e-12) {
  const Gauss32& g = gauss32();
  auto composite = [&](int panels) {
    double acc = 0.0;
    const double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * w;
      const double mid = lo + 0.5 * w;
      for (int i = 0; i < 32; ++i) {
        acc += g.weight[i] * f(mid + 0.5 * w * g.node[i]);
      }
    }
    return acc * 0.5 * w;
  };
  double prev = composite(1);
  for (int panels = 2; panels <= 64; panels *= 2) {
    const double cur = composite(panels);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace

Mat2c unitary_project(const Mat2c& m) {
  Eigen::JacobiSVD<Mat2c> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

Mat2c propagate(const Pulse& p, double omega, double t1, double t2,
                double rtol) {
  if (t2 <= t1) return Mat2c::Identity();
  const double tau = t2 - t1;
  int steps = std::max(64, static_cast<int>(std::ceil(std::abs(omega) * tau * 64.0)));
  Mat2c coarse = rk4_run(p, omega, t1, t2, steps);
  for (int iter = 0; iter < 8; ++iter) {
    const Mat2c fine = rk4_run(p, omega, t1, t2, 2 * steps);
    // RK4 is fourth order, so the halved-step Richardson error estimate is
    // |fine - coarse| / (2^4 - 1).
    const double err = (fine - coarse).norm() / 15.0;
    if (err < rtol) return unitary_project(fine);
    coarse = fine;
    steps *= 2;
  }
  return unitary_project(coarse);
}

Mat2c linear_pulse_propagator(double alpha, double omega, double t1,
                              double t2) {
  const double dt = t2 - t1;
  auto rz = [](double angle) {  // exp(-i angle Z / 2)
    Mat2c m = Mat2c::Zero();
    m(0, 0) = std::exp(Complex(0, -0.5 * angle));
    m(1, 1) = std::exp(Complex(0, 0.5 * angle));
    return m;
  };
  const Mat2c v = su2_exp(omega * dt, 0.0, -0.5 * alpha * dt);
  return rz(alpha * t2) * v * rz(-alpha * t1);
}

SegmentGenerator extract_generator(const Mat2c& u, double t1, double t2,
                                   double omega) {
  const Su2Log log = su2_log(u);
  SegmentGenerator g;
  g.a = log.a;
  g.b = log.b;
  g.c = log.c;
  g.t1 = t1;
  g.t2 = t2;
  g.omega = omega;
  return g;
}

PhaseVector digitize(const Pulse& p, double omega, int L) {
  const double tau = p.T() / L;
  if (std::abs(omega) * tau >= kPi) {
    throw Error(ErrorCode::MagnusRangeViolation,
                "digitize requires omega * (T/L) < pi");
  }
  PhaseVector psis(L);
  for (int j = 0; j < L; ++j) {
    const double t1 = j * tau;
    const double t2 = (j + 1) * tau;
    const SegmentGenerator g =
        extract_generator(propagate(p, omega, t1, t2), t1, t2, omega);
    psis[j] = std::atan2(g.b, g.a);
  }
  return psis;
}

MagnusTerms magnus_terms(const Pulse& p, double omega, double t1, double t2) {
  MagnusTerms out;
  out.omega1.t1 = t1;
  out.omega1.t2 = t2;
  out.omega1.omega = omega;
  out.omega1.a =
      omega * integrate_1d([&](double s) { return std::cos(p.eval(s)); }, t1, t2);
  out.omega1.b =
      omega * integrate_1d([&](double s) { return std::sin(p.eval(s)); }, t1, t2);
  out.omega1.c = 0.0;

  // Second term: only a Z component survives the commutator algebra,
  //   c2 = -w^2 * int_{t1}^{t2} ds1 int_{t1}^{s1} ds2 sin(phi(s1) - phi(s2)),
  // evaluated by a 32x32 Gauss-Legendre tensor rule mapped onto the triangle
  // via s1 = t1 + u h, s2 = t1 + u v h (Jacobian u h^2).
  const Gauss32& g = gauss32();
  const double h = t2 - t1;
  double acc = 0.0;
  for (int i = 0; i < 32; ++i) {
    const double u = 0.5 * (1.0 + g.node[i]);
    const double s1 = t1 + u * h;
    const double phi1 = p.eval(s1);
    double inner = 0.0;
    for (int j = 0; j < 32; ++j) {
      const double v = 0.5 * (1.0 + g.node[j]);
      const double s2 = t1 + u * v * h;
      inner += g.weight[j] * std::sin(phi1 - p.eval(s2));
    }
    acc += g.weight[i] * u * inner;
  }
  acc *= 0.25 * h * h;  // two [-1,1] -> [0,1] interval scalings
  out.omega2_c = -omega * omega * acc;
  return out;
}

}  // namespace pulselearn
