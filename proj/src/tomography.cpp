#include "pulselearn/tomography.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "pulselearn/dynamics.hpp"
#include "pulselearn/parallel.hpp"
#include "pulselearn/rng.hpp"

namespace pulselearn {

namespace {

double spectral_norm3(const Mat3r& m) {
  return m.jacobiSvd().singularValues()(0);
}

Mat3r random_matrix3(Rng& rng) {
  Mat3r g;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) g(r, c) = rng.normal();
  }
  return g;
}

Mat3r scaled_to(const Mat3r& m, double delta) {
  const double norm = spectral_norm3(m);
  if (norm <= 0.0 || delta == 0.0) return Mat3r::Zero();
  return m * (delta / norm);
}

}  // namespace

NoiseModel NoiseModel::with_random_spam(double alpha, double delta,
                                        bool symmetric, std::uint64_t seed,
                                        std::int64_t shots, NoiseKind kind) {
  NoiseModel model;
  model.alpha = alpha;
  model.delta = delta;
  model.symmetric_diff = symmetric;
  model.shots = shots;
  model.kind = kind;
  Rng rng(seed);
  if (symmetric) {
    const Mat3r g = random_matrix3(rng);
    const Mat3r d = scaled_to(0.5 * (g + g.transpose()), delta);
    model.gM = d;
    model.gS = -d;
  } else {
    model.gS = scaled_to(random_matrix3(rng), delta);
    model.gM = scaled_to(random_matrix3(rng), delta);
  }
  return model;
}

PTM simulate_expectations(const Mat2c& u, const NoiseModel& noise,
                          std::uint64_t seed) {
  const Mat3r rot = so3_from_su2(u);
  Mat3r a_exact = noise.alpha * rot;
  if (noise.delta != 0.0) {
    const Mat3r s_mat = noise.gS.exp();
    const Mat3r m_mat = noise.gM.exp();
    a_exact = m_mat * a_exact * s_mat;
  }

  // Input Bloch vectors in fixed draw order: |0>, |1>, |+>, |+i>.
  const Vec3 inputs[4] = {Vec3(0, 0, 1), Vec3(0, 0, -1), Vec3(1, 0, 0),
                          Vec3(0, 1, 0)};
  Vec3 measured[4];
  bool clamped = false;
  Rng rng(seed);
  for (int s = 0; s < 4; ++s) {
    const Vec3 exact = a_exact * inputs[s];
    for (int c = 0; c < 3; ++c) {
      double e = exact(c);
      if (noise.exact_shots()) {
        measured[s](c) = e;
        continue;
      }
      switch (noise.kind) {
        case NoiseKind::BernoulliCounts: {
          double p = 0.5 * (1.0 + e);
          if (p < 0.0) {
            p = 0.0;
            clamped = true;
          } else if (p > 1.0) {
            p = 1.0;
            clamped = true;
          }
          const double freq = static_cast<double>(rng.binomial(noise.shots, p)) /
                              static_cast<double>(noise.shots);
          measured[s](c) = 2.0 * freq - 1.0;
          break;
        }
        case NoiseKind::GaussianEntries:
          measured[s](c) =
              e + rng.normal() / std::sqrt(static_cast<double>(noise.shots));
          break;
      }
    }
  }

  PTM out;
  out.clamped = clamped;
  out.t_vec = 0.5 * (measured[0] + measured[1]);
  out.A.col(0) = measured[2] - out.t_vec;
  out.A.col(1) = measured[3] - out.t_vec;
  out.A.col(2) = 0.5 * (measured[0] - measured[1]);
  return out;
}

Mat2c robust_reconstruct(const PTM& target, const PTM& reference) {
  // Shot noise and generic SPAM leave a small antisymmetric component in the
  // reference block; only its symmetric part is meaningful for the sandwich.
  const Mat3r k_raw = reference.A;
  const Mat3r k_sym = 0.5 * (k_raw + k_raw.transpose());

  Eigen::SelfAdjointEigenSolver<Mat3r> es(k_sym);
  const Vec3 evals = es.eigenvalues();
  if (evals.minCoeff() <= 1e-6) {
    throw Error(ErrorCode::ReferenceIllConditioned,
                "reference tomography block has an eigenvalue <= 1e-6");
  }
  const Mat3r k_inv_sqrt = es.eigenvectors() *
                           evals.cwiseSqrt().cwiseInverse().asDiagonal() *
                           es.eigenvectors().transpose();

  const Mat3r b = k_inv_sqrt * target.A * k_inv_sqrt;
  if (b.jacobiSvd().singularValues().minCoeff() <= 1e-12) {
    throw Error(ErrorCode::PolarSingular,
                "sandwiched tomography block is singular");
  }
  return su2_from_quat(quat_from_rotation(polar3(b)));
}

std::vector<Mat2c> align_signs(const std::vector<double>& omegas,
                               const std::vector<Mat2c>& unitaries) {
  if (omegas.size() != unitaries.size()) {
    throw Error(ErrorCode::GridMismatch,
                "alignment needs one drive value per unitary");
  }
  std::vector<Mat2c> out(unitaries.size());
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    if (i == 0) {
      out[0] = unitaries[0];
      continue;
    }
    const double gap = spectral_norm(unitaries[i] - out[i - 1]);
    out[i] = (gap >= 1.0) ? Mat2c(-unitaries[i]) : unitaries[i];
  }
  return out;
}

SampleSet run_experiment_suite(const Pulse& p, int L, double T,
                               const NoiseModel& noise, std::uint64_t seed,
                               int jobs) {
  const int n_nodes = L + 1;
  const std::vector<double> thetas = quadrant_midpoints(n_nodes);

  // Drive chain: omega = 0 reference, then each quadrature node, with each
  // gap subdivided so that consecutive drives differ by at most 0.4 / T and
  // the threshold alignment below is reliable.
  std::vector<double> chain;
  std::vector<std::size_t> node_index(n_nodes);
  chain.push_back(0.0);
  double prev = 0.0;
  for (int j = 0; j < n_nodes; ++j) {
    const double omega = thetas[j] * static_cast<double>(L) / T;
    const double gap = omega - prev;
    const int pieces =
        std::max(1, static_cast<int>(std::ceil(gap * T / 0.4)));
    for (int m = 1; m < pieces; ++m) {
      chain.push_back(prev + gap * m / pieces);
    }
    chain.push_back(omega);
    node_index[j] = chain.size() - 1;
    prev = omega;
  }

  // Measure every chain point (index 0 is the identity reference).
  std::vector<PTM> ptms(chain.size());
  ptms[0] = simulate_expectations(Mat2c::Identity(), noise, derive_seed(seed, 0));
  parallel_for(chain.size() - 1, jobs, [&](std::size_t i) {
    const double omega = chain[i + 1];
    const Mat2c u_true = propagate(p, omega, 0.0, T, 1e-10);
    ptms[i + 1] = simulate_expectations(u_true, noise, derive_seed(seed, i + 1));
  });

  std::vector<Mat2c> recon(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    recon[i] = robust_reconstruct(ptms[i], ptms[0]);
  }
  const std::vector<Mat2c> aligned = align_signs(chain, recon);

  SampleSet out;
  out.L = L;
  out.thetas = thetas;
  out.unitaries.resize(n_nodes);
  for (int j = 0; j < n_nodes; ++j) {
    out.unitaries[j] = aligned[node_index[j]];
  }
  if (noise.exact_shots()) {
    out.noise_sigma = 0.0;
  } else {
    const double root_m = std::sqrt(static_cast<double>(noise.shots));
    out.noise_sigma = (noise.kind == NoiseKind::GaussianEntries)
                          ? 1.0 / root_m
                          : 1.0 / (noise.alpha * root_m);
  }
  return out;
}

}  // namespace pulselearn
