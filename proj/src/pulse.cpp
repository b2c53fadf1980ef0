#include "pulselearn/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pulselearn/rng.hpp"

namespace pulselearn {

namespace {

// Standard normal CDF, used as the exact integral of the Gaussian window
// over a subinterval.
double normal_cdf(double x) { return 0.5 * (1.0 + std::erf(x / std::sqrt(2.0))); }

// Exact integral of a piecewise-linear table (uniform nodes on [0, T]).
double table_integral(const std::vector<double>& table, double T, double a,
                      double b) {
  if (table.empty()) return 0.0;
  const int n = static_cast<int>(table.size()) - 1;  // intervals
  const double dt = T / n;
  auto value_at = [&](double t) {
    const double s = std::min(std::max(t / dt, 0.0), static_cast<double>(n));
    const int i = std::min(static_cast<int>(s), n - 1);
    const double frac = s - i;
    return table[i] * (1.0 - frac) + table[i + 1] * frac;
  };
  double acc = 0.0;
  const int i_lo = std::max(0, static_cast<int>(std::floor(a / dt)));
  const int i_hi = std::min(n - 1, static_cast<int>(std::floor(b / dt)));
  for (int i = i_lo; i <= i_hi; ++i) {
    const double x1 = std::max(a, i * dt);
    const double x2 = std::min(b, (i + 1) * dt);
    if (x2 <= x1) continue;
    acc += 0.5 * (value_at(x1) + value_at(x2)) * (x2 - x1);
  }
  return acc;
}

}  // namespace

Pulse Pulse::linear(double alpha, double T) {
  Pulse p;
  p.kind_ = PulseKind::Linear;
  p.alpha_ = alpha;
  p.T_ = T;
  p.beta_hint_ = std::abs(alpha);
  return p;
}

Pulse Pulse::sinusoid(std::vector<double> amplitudes,
                      std::vector<double> frequencies, double T) {
  Pulse p;
  p.kind_ = PulseKind::Sinusoid;
  p.amps_ = std::move(amplitudes);
  p.freqs_ = std::move(frequencies);
  p.T_ = T;
  double beta = 0.0;
  for (double f : p.freqs_) beta = std::max(beta, 2.0 * kPi * std::abs(f));
  p.beta_hint_ = beta;
  return p;
}

Pulse Pulse::sin3pi(double T) { return sinusoid({1.0}, {1.5}, T); }

Pulse Pulse::biharmonic(double T) {
  Pulse p = sinusoid({0.5, 0.5}, {1.0, 2.0}, T);
  p.kind_ = PulseKind::Biharmonic;
  return p;
}

Pulse Pulse::piecewise_constant(std::vector<double> values, double T) {
  Pulse p;
  p.kind_ = PulseKind::PiecewiseConstant;
  p.pc_values_ = std::move(values);
  if (p.pc_values_.empty()) p.pc_values_.push_back(0.0);
  p.T_ = T;
  p.beta_hint_ = 0.0;
  return p;
}

Pulse Pulse::constant(double value, double T) {
  return piecewise_constant({value}, T);
}

double Pulse::eval(double t) const {
  const double tol = 1e-12 * std::max(1.0, T_);
  if (t < -tol || t > T_ + tol) {
    throw Error(ErrorCode::OutOfDomain, "pulse evaluated outside [0, T]");
  }
  t = std::min(std::max(t, 0.0), T_);
  switch (kind_) {
    case PulseKind::Linear:
      return alpha_ * t;
    case PulseKind::Sinusoid:
    case PulseKind::Biharmonic: {
      double v = 0.0;
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        v += amps_[i] * std::sin(2.0 * kPi * freqs_[i] * t);
      }
      return v;
    }
    case PulseKind::PiecewiseConstant: {
      const int n = static_cast<int>(pc_values_.size());
      const int i = std::min(static_cast<int>(t / T_ * n), n - 1);
      return pc_values_[i];
    }
    case PulseKind::Perturbed: {
      const int n = static_cast<int>(table_.size()) - 1;
      const double s = std::min(t / T_ * n, static_cast<double>(n));
      const int i = std::min(static_cast<int>(s), n - 1);
      const double frac = s - i;
      return base_->eval(t) + table_[i] * (1.0 - frac) + table_[i + 1] * frac;
    }
  }
  return 0.0;
}

double Pulse::integral(double a, double b) const {
  switch (kind_) {
    case PulseKind::Linear:
      return 0.5 * alpha_ * (b * b - a * a);
    case PulseKind::Sinusoid:
    case PulseKind::Biharmonic: {
      double v = 0.0;
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        const double k = 2.0 * kPi * freqs_[i];
        if (k == 0.0) continue;
        v += amps_[i] * (std::cos(k * a) - std::cos(k * b)) / k;
      }
      return v;
    }
    case PulseKind::PiecewiseConstant: {
      const int n = static_cast<int>(pc_values_.size());
      const double cell = T_ / n;
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        const double x1 = std::max(a, i * cell);
        const double x2 = std::min(b, (i + 1) * cell);
        if (x2 > x1) acc += pc_values_[i] * (x2 - x1);
      }
      return acc;
    }
    case PulseKind::Perturbed:
      return base_->integral(a, b) + table_integral(table_, T_, a, b);
  }
  return 0.0;
}

std::string Pulse::description() const {
  char buf[64];
  const auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  const auto list = [&num](const std::vector<double>& vs) {
    std::string s = "[";
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (i) s += ",";
      s += num(vs[i]);
    }
    return s + "]";
  };
  std::string body;
  switch (kind_) {
    case PulseKind::Linear:
      body = "linear(alpha=" + num(alpha_) + ")";
      break;
    case PulseKind::Sinusoid:
      body = "sinusoid(amps=" + list(amps_) + ",freqs=" + list(freqs_) + ")";
      break;
    case PulseKind::Biharmonic:
      body = "biharmonic";
      break;
    case PulseKind::PiecewiseConstant:
      body = "piecewise_constant(values=" + list(pc_values_) + ")";
      break;
    case PulseKind::Perturbed:
      body = "perturbed(base=" + base_->description() +
             ",table=" + list(table_) + ")";
      break;
  }
  return body + "@T=" + num(T_);
}

SegmentAverages segment_averages(const Pulse& p, int L) {
  SegmentAverages out;
  out.h = p.T() / L;
  out.values.resize(L);
  for (int j = 0; j < L; ++j) {
    out.values[j] = p.integral(j * out.h, (j + 1) * out.h) / out.h;
  }
  return out;
}

Pulse perturb(const Pulse& base, std::uint64_t seed, int L_perturb, double eta,
              double w) {
  Rng rng(seed);
  const double T = base.T();
  std::vector<double> offsets(L_perturb);
  for (double& v : offsets) v = rng.uniform(-eta, eta);

  const int n_fine = std::max(1000, 20 * L_perturb);
  std::vector<double> table(n_fine + 1, 0.0);
  const double cell = T / L_perturb;
  for (int i = 0; i <= n_fine; ++i) {
    const double t = T * i / n_fine;
    // Gaussian window truncated at 4w and renormalized over its in-domain
    // mass: a convex average of the offsets, hence a sup-norm contraction.
    const double lo = std::max(0.0, t - 4.0 * w);
    const double hi = std::min(T, t + 4.0 * w);
    double total = 0.0;
    double acc = 0.0;
    const int k_lo = std::max(0, static_cast<int>(std::floor(lo / cell)));
    const int k_hi =
        std::min(L_perturb - 1, static_cast<int>(std::floor(hi / cell)));
    for (int k = k_lo; k <= k_hi; ++k) {
      const double x1 = std::max(lo, k * cell);
      const double x2 = std::min(hi, (k + 1) * cell);
      if (x2 <= x1) continue;
      const double wgt = normal_cdf((x2 - t) / w) - normal_cdf((x1 - t) / w);
      total += wgt;
      acc += wgt * offsets[k];
    }
    table[i] = (total > 0.0) ? acc / total : 0.0;
  }

  Pulse p;
  p.kind_ = PulseKind::Perturbed;
  p.T_ = T;
  p.base_ = std::make_shared<Pulse>(base);
  p.table_ = std::move(table);
  p.beta_hint_ = base.beta_hint() + (w > 0.0 ? eta / w : 0.0);
  return p;
}

}  // namespace pulselearn
