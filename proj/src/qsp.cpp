#include "pulselearn/qsp.hpp"

#include <cmath>

namespace pulselearn {

namespace {

// V(theta, psi) = e^{-i psi Z/2} e^{-i theta X} e^{i psi Z/2}
//              = cos(theta) I - i sin(theta) (cos(psi) X + sin(psi) Y).
Mat2c v_factor(double theta, double psi) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat2c v;
  v << c, -kImag * s * std::exp(Complex(0, -psi)),
       -kImag * s * std::exp(Complex(0, psi)), c;
  return v;
}

Mat2c projector(double phi) {
  return 0.5 * (Mat2c::Identity() - std::cos(phi) * pauli_x() -
                std::sin(phi) * pauli_y());
}

double frob_sq(const Mat2c& m) { return m.squaredNorm(); }

// Frobenius inner product <A, B> = Tr(A^+ B).
Complex frob_inner(const Mat2c& a, const Mat2c& b) {
  return (a.adjoint() * b).trace();
}

// Azimuth of a near-rank-one projector-like matrix P ~ (I - cos f X - sin f Y)/2.
double projector_phase(const Mat2c& p) {
  const Complex p01 = p(0, 1);
  const Complex p10 = p(1, 0);
  return std::atan2((p01 - p10).imag(), -(p01 + p10).real());
}

// One right-to-left peel pass over a coefficient array indexed k + L.
// Emits phases in extraction order (earliest-in-time first) and optionally
// records the per-step propagation diagnostics.
PhaseVector peel(std::vector<Mat2c> c, int L, VarianceProfile* profile,
                 const PhaseVector* fixed_phases) {
  PhaseVector out;
  out.reserve(L);
  if (profile) {
    profile->g.assign(L - 1, 0.0);
    profile->aR.assign(L - 1, 0.0);
    profile->aL.assign(L - 1, 0.0);
    profile->aP.assign(L - 1, 0.0);
    profile->aQ.assign(L - 1, 0.0);
    profile->big_b.assign(L - 1, 0.0);
    profile->rho.assign(L - 1, 0.0);
    profile->alpha.assign(L - 1, 0.0);
  }
  const Mat2c z = pauli_z();
  for (int j = L; j >= 1; --j) {
    const Mat2c top = c[j + L];
    const double s_top = frob_sq(top);
    if (s_top <= 1e-14) {
      throw Error(ErrorCode::DegenerateCoefficient,
                  "leading Fourier coefficient has vanishing norm");
    }
    double phi;
    if (fixed_phases) {
      // Clean diagnostic pass: use the supplied phases verbatim.
      phi = (*fixed_phases)[L - j];
    } else {
      const Mat2c p_hat = (top.adjoint() * top) / s_top;
      phi = projector_phase(p_hat);
    }
    out.push_back(phi);

    const Mat2c p = projector(phi);
    const Mat2c q = Mat2c::Identity() - p;

    // Degree reduction C'_k = C_{k-1} Q + C_{k+1} P for |k| <= j - 1.
    std::vector<Mat2c> next(c.size(), Mat2c::Zero());
    for (int k = -(j - 1); k <= j - 1; ++k) {
      next[k + L] = c[k - 1 + L] * q + c[k + 1 + L] * p;
    }

    if (profile && j <= L - 1) {
      // Step j propagates the phase/coefficient noise of the degree-j stack
      // into the degree-(j-1) readout; stored at entry j - 1.
      const Mat2c c_top = c[j + L];            // C_j
      const Mat2c c_left = c[j - 2 + L];       // C_{j-2} (k = -1 when j = 1)
      const Mat2c c_red = next[j - 1 + L];     // C'_{j-1}
      const double s_red = frob_sq(c_red);
      const double s_j = frob_sq(c_top);
      const Mat2c p_prime = 0.5 * kImag * (p * z - z * p);
      const Mat2c readout = c_red * z;

      const double g =
          (2.0 / s_red) * frob_inner((c_top - c_left) * p_prime, readout).imag();
      const Mat2c a_r = (2.0 / s_red) * readout * p;
      const Mat2c a_l = (2.0 / s_red) * readout * q;
      const Mat2c g_p = c_top.adjoint() * readout;
      const Mat2c a_p =
          (2.0 / s_red) *
          (p * (g_p - g_p.adjoint()) -
           2.0 * kImag * (p * g_p).trace().imag() * p);
      const Mat2c g_q = c_left.adjoint() * readout;
      const Mat2c a_q =
          (2.0 / s_red) *
          (q * (g_q - g_q.adjoint()) -
           2.0 * kImag * (q * g_q).trace().imag() * q);
      const Mat2c a_sum = a_r + a_l + a_p + a_q;
      const double big_b =
          (2.0 * g / s_j) * frob_inner(a_sum, readout * p).real();

      const int idx = j - 1;
      profile->g[idx] = g;
      profile->aR[idx] = frob_sq(a_r);
      profile->aL[idx] = frob_sq(a_l);
      profile->aP[idx] = frob_sq(a_p);
      profile->aQ[idx] = frob_sq(a_q);
      profile->big_b[idx] = big_b;
      profile->rho[idx] = g * g;
      profile->alpha[idx] =
          big_b + 0.5 * (profile->aR[idx] + profile->aL[idx] +
                         profile->aP[idx] + profile->aQ[idx]);
    }

    c = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<double> quadrant_midpoints(int N) {
  std::vector<double> thetas(N);
  for (int j = 0; j < N; ++j) thetas[j] = (2.0 * j + 1.0) * kPi / (4.0 * N);
  return thetas;
}

Mat2c build_W(double theta, const PhaseVector& psis) {
  Mat2c w = Mat2c::Identity();
  for (double psi : psis) w = v_factor(theta, psi) * w;
  return w;
}

SampleSet augment_full_circle(const SampleSet& samples) {
  const int n = static_cast<int>(samples.thetas.size());
  if (n == 0 || samples.unitaries.size() != samples.thetas.size()) {
    throw Error(ErrorCode::GridMismatch, "empty or inconsistent sample set");
  }
  for (int j = 0; j < n; ++j) {
    const double want = (2.0 * j + 1.0) * kPi / (4.0 * n);
    if (std::abs(samples.thetas[j] - want) > 1e-9) {
      throw Error(ErrorCode::GridMismatch,
                  "samples not on the canonical quadrant midpoint grid");
    }
  }
  const Mat2c z = pauli_z();
  const double parity = (samples.L % 2 == 0) ? 1.0 : -1.0;

  SampleSet out;
  out.L = samples.L;
  out.noise_sigma = samples.noise_sigma;
  out.thetas.resize(4 * n);
  out.unitaries.resize(4 * n);
  for (int j = 0; j < 4 * n; ++j) {
    out.thetas[j] = (2.0 * j + 1.0) * kPi / (4.0 * n);
  }
  for (int j = 0; j < n; ++j) {
    out.unitaries[j] = samples.unitaries[j];
  }
  // Second quadrant: W(pi - theta) = (-1)^L Z W(theta) Z.
  for (int j = 0; j < n; ++j) {
    out.unitaries[n + j] = parity * z * samples.unitaries[n - 1 - j] * z;
  }
  // Lower half: W(2 pi - theta) = Z W(theta) Z.
  for (int j = 0; j < 2 * n; ++j) {
    out.unitaries[2 * n + j] = z * out.unitaries[2 * n - 1 - j] * z;
  }
  return out;
}

FourierStack fourier_coeffs(const SampleSet& full_circle, int L) {
  FourierStack stack;
  stack.L = L;
  stack.noise_sigma = full_circle.noise_sigma;
  stack.coeffs = midpoint_idft(full_circle.unitaries, L);
  return stack;
}

FourierStack exact_coeffs(const PhaseVector& psis, int N) {
  const int L = static_cast<int>(psis.size());
  if (N <= 0) N = L + 1;
  SampleSet samples;
  samples.L = L;
  samples.thetas = quadrant_midpoints(N);
  samples.unitaries.reserve(N);
  for (double theta : samples.thetas) {
    samples.unitaries.push_back(build_W(theta, psis));
  }
  return fourier_coeffs(augment_full_circle(samples), L);
}

PhaseVector estimate_phases(const FourierStack& coeffs, SweepDirection dir) {
  const int L = coeffs.L;
  if (dir == SweepDirection::RightToLeft) {
    return peel(coeffs.coeffs, L, nullptr, nullptr);
  }

  // The transposed stack is the coefficient array of W^T, whose phase
  // sequence is the negated reversal; peeling it yields -psi_L first.
  std::vector<Mat2c> transposed(coeffs.coeffs.size());
  for (std::size_t i = 0; i < transposed.size(); ++i) {
    transposed[i] = coeffs.coeffs[i].transpose();
  }
  const PhaseVector rev = peel(std::move(transposed), L, nullptr, nullptr);
  PhaseVector ltr(L);
  for (int k = 1; k <= L; ++k) ltr[k - 1] = -rev[L - k];
  if (dir == SweepDirection::LeftToRight) return ltr;

  // Stitched: early (reliable) half from each sweep, spliced at ceil(L/2).
  PhaseVector rtl = peel(coeffs.coeffs, L, nullptr, nullptr);
  const int split = (L + 1) / 2;
  for (int k = split; k < L; ++k) rtl[k] = ltr[k];
  return rtl;
}

VarianceProfile variance_profile(const FourierStack& coeffs,
                                 const PhaseVector& psis) {
  const int L = coeffs.L;
  VarianceProfile profile;
  if (L < 2) return profile;
  // The peel consumes phases in extraction order phi_j = psi_{L+1-j}, i.e.
  // the given sequence read forward.
  peel(coeffs.coeffs, L, &profile, &psis);
  return profile;
}

}  // namespace pulselearn
