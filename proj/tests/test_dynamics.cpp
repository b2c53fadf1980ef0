#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "pulselearn/dynamics.hpp"
#include "pulselearn/rng.hpp"

using namespace pulselearn;

namespace {

double udiff(const Mat2c& a, const Mat2c& b) { return spectral_norm(a - b); }

}  // namespace

TEST_CASE("constant-phase propagator is a pure X rotation") {
  const Pulse zero = Pulse::constant(0.0);
  for (double omega : {0.3, 1.0, 2.4}) {
    for (double tau : {0.2, 0.7}) {
      const Mat2c u = propagate(zero, omega, 0.1, 0.1 + tau);
      CHECK(udiff(u, su2_exp(omega * tau, 0.0, 0.0)) < 1e-9);
      CHECK(unitarity_defect(u) < 1e-10);
    }
  }
}

TEST_CASE("propagator matches the linear-pulse closed form") {
  Rng rng(42u);
  for (int trial = 0; trial < 20; ++trial) {
    const double alpha = rng.uniform(-1.5, 1.5);
    const double omega = rng.uniform(0.1, 2.0);
    double t1 = rng.uniform(0.0, 1.0), t2 = rng.uniform(0.0, 1.0);
    if (t1 > t2) std::swap(t1, t2);
    const Pulse p = Pulse::linear(alpha, 1.0);
    const Mat2c u = propagate(p, omega, t1, t2);
    CHECK(udiff(u, linear_pulse_propagator(alpha, omega, t1, t2)) < 1e-9);
  }
}

TEST_CASE("propagation composes over subintervals") {
  const Pulse p = Pulse::sin3pi();
  const double omega = 1.7, tau = 0.37;
  const Mat2c whole = propagate(p, omega, 0.0, 1.0);
  const Mat2c parts = propagate(p, omega, tau, 1.0) * propagate(p, omega, 0.0, tau);
  CHECK(udiff(whole, parts) < 1e-9);
}

TEST_CASE("linear-pulse closed form special cases") {
  // Zero slope: a plain X rotation over the interval length.
  CHECK(udiff(linear_pulse_propagator(0.0, 0.9, 0.2, 0.8),
              su2_exp(0.9 * 0.6, 0.0, 0.0)) < 1e-12);
  // Empty interval: identity.
  CHECK(udiff(linear_pulse_propagator(1.3, 0.9, 0.4, 0.4), Mat2c::Identity()) <
        1e-12);
}

TEST_CASE("linear-pulse phase readout is the exact interval midpoint value") {
  Rng rng(7u);
  for (int trial = 0; trial < 50; ++trial) {
    const double alpha = rng.uniform(-1.2, 1.2);
    const double omega = rng.uniform(0.2, 1.4);
    double t1 = rng.uniform(0.0, 1.0), t2 = rng.uniform(0.0, 1.0);
    if (t1 > t2) std::swap(t1, t2);
    if (t2 - t1 < 0.05) continue;  // keep the xy part well away from zero
    const Mat2c u = linear_pulse_propagator(alpha, omega, t1, t2);
    if (spectral_norm(u + Mat2c::Identity()) < 0.3) continue;  // log branch
    const SegmentGenerator gen = extract_generator(u, t1, t2, omega);
    CHECK(gen.t1 == t1);
    CHECK(gen.t2 == t2);
    CHECK(gen.omega == omega);
    const double psi = std::atan2(gen.b, gen.a);
    CHECK(std::abs(psi - alpha * (t1 + t2) / 2.0) < 1e-9);
  }
}

TEST_CASE("digitizer is exact for linear pulses") {
  const double alpha = 0.8;
  const int L = 12;
  const PhaseVector psis = digitize(Pulse::linear(alpha), 1.1, L);
  REQUIRE(static_cast<int>(psis.size()) == L);
  for (int j = 0; j < L; ++j) {
    const double mid = (j + 0.5) / L;
    CHECK(std::abs(psis[j] - alpha * mid) < 1e-9);
  }
}

TEST_CASE("digitizer returns the constant for constant pulses") {
  const PhaseVector psis = digitize(Pulse::constant(-0.9), 0.7, 5);
  for (double v : psis) CHECK(v == doctest::Approx(-0.9).epsilon(1e-9));
}

TEST_CASE("digitizer rejects drives outside the convergence range") {
  // omega * tau = 4.0 * 1.0 >= pi
  try {
    digitize(Pulse::constant(0.0), 4.0, 1);
    FAIL("expected MagnusRangeViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MagnusRangeViolation);
  }
}

TEST_CASE("digitizer bias at fixed drive angle decays at fourth order") {
  const Pulse p = Pulse::sin3pi();
  // omega * tau held fixed while L grows.  The readout error carries both a
  // (beta^4 h^4) and a (beta^2 theta^2 h^2) term; a small angle keeps the
  // quartic term dominant over the whole sweep so its order is measurable.
  const double theta = 0.05;
  std::vector<double> ls, errs;
  for (int L : {8, 16, 32, 64}) {
    const double omega = theta * L;  // T = 1
    const PhaseVector psis = digitize(p, omega, L);
    const SegmentAverages avg = segment_averages(p, L);
    double worst = 0.0;
    for (int j = 0; j < L; ++j) {
      worst = std::max(worst, std::abs(psis[j] - avg.values[j]));
    }
    ls.push_back(L);
    errs.push_back(worst);
  }
  const double slope = oracles::loglog_slope(ls, errs);
  CHECK(slope > -4.5);
  CHECK(slope < -3.5);
}

TEST_CASE("second Magnus term vanishes for constant pulses") {
  const MagnusTerms terms = magnus_terms(Pulse::constant(0.4), 1.3, 0.1, 0.9);
  CHECK(std::abs(terms.omega2_c) < 1e-12);
  // First term reduces to the plain interval integral.
  CHECK(terms.omega1.a == doctest::Approx(1.3 * 0.8 * std::cos(0.4)).epsilon(1e-9));
  CHECK(terms.omega1.b == doctest::Approx(1.3 * 0.8 * std::sin(0.4)).epsilon(1e-9));
}

TEST_CASE("second Magnus term of a linear pulse follows the cubic law") {
  const double alpha = 0.5, omega = 1.0, h = 0.2;  // alpha * h = 0.1
  const MagnusTerms terms = magnus_terms(Pulse::linear(alpha), omega, 0.3, 0.3 + h);
  const double model = -(1.0 / 6.0) * alpha * omega * omega * h * h * h;
  CHECK(std::abs(terms.omega2_c - model) < 0.05 * std::abs(model));
  // The exact closed form for the nested integral of sin(alpha (s1 - s2)).
  const double exact = -omega * omega *
                       (alpha * h - std::sin(alpha * h)) / (alpha * alpha);
  CHECK(terms.omega2_c == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("full-generator z component converges to the second Magnus term") {
  const Pulse p = Pulse::sin3pi();
  const double omega = 1.0, t1 = 0.3;
  double prev_ratio = 0.0;
  std::vector<double> ratios;
  for (double h : {0.2, 0.1, 0.05, 0.025}) {
    const Mat2c u = propagate(p, omega, t1, t1 + h, 1e-12);
    const SegmentGenerator full = extract_generator(u, t1, t1 + h, omega);
    const MagnusTerms terms = magnus_terms(p, omega, t1, t1 + h);
    ratios.push_back(full.c / terms.omega2_c);
  }
  // The ratio walks toward 1 as h shrinks.
  CHECK(std::abs(ratios.back() - 1.0) < 0.02);
  CHECK(std::abs(ratios.back() - 1.0) < std::abs(ratios.front() - 1.0));
  (void)prev_ratio;
}

TEST_CASE("odd/even Magnus structure sets the h-scaling of the generator") {
  const Pulse p = Pulse::sin3pi();
  const double omega = 1.0, t1 = 0.3;
  std::vector<double> hs, c_abs, odd_rem;
  for (int k = 3; k <= 7; ++k) {
    const double h = std::pow(2.0, -k);
    const Mat2c u = propagate(p, omega, t1, t1 + h, 1e-13);
    const SegmentGenerator full = extract_generator(u, t1, t1 + h, omega);
    const MagnusTerms terms = magnus_terms(p, omega, t1, t1 + h);
    hs.push_back(h);
    c_abs.push_back(std::abs(full.c));
    odd_rem.push_back(std::hypot(full.a - terms.omega1.a,
                                 full.b - terms.omega1.b));
  }
  const double slope_c = oracles::loglog_slope(hs, c_abs);
  const double slope_odd = oracles::loglog_slope(hs, odd_rem);
  CHECK(slope_c > 2.5);
  CHECK(slope_c < 3.5);
  CHECK(slope_odd > 4.5);
  CHECK(slope_odd < 5.5);
}

TEST_CASE("propagator stays unitary after projection") {
  const Pulse p = perturb(Pulse::biharmonic(), 3u, 10, 0.5, 0.02);
  for (double omega : {0.5, 5.0, 20.0}) {
    CHECK(unitarity_defect(propagate(p, omega, 0.0, 1.0)) < 1e-10);
  }
}

TEST_CASE("unitary projection repairs small non-unitarity") {
  Rng rng(5u);
  const Mat2c u = oracles::random_su2(rng);
  Mat2c m = u;
  m(0, 0) += Complex(1e-3, -2e-3);
  const Mat2c fixed = unitary_project(m);
  CHECK(unitarity_defect(fixed) < 1e-12);
  CHECK(udiff(fixed, u) < 1e-2);
}
