// Command-line surface for the pulse-learning toolkit: one subcommand per
// experiment family, JSON config in, CSV + manifest out.
//
// Exit codes: 0 success, 1 config/usage error, 2 runtime failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pulselearn/dynamics.hpp"
#include "pulselearn/fisher.hpp"
#include "pulselearn/io.hpp"
#include "pulselearn/pipeline.hpp"
#include "pulselearn/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pulselearn;

namespace {

constexpr const char* kToolVersion = "1.0.0";

// Thrown for anything wrong with flags or config contents (exit code 1).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool quiet = false;
};

void add_common_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "JSON config file");
  cmd->add_option("--out", c.out_dir,
                  "output directory (default: $PULSELEARN_OUT or '.')");
  cmd->add_option("--seed", c.seed, "override the config seed");
  cmd->add_option("--jobs", c.jobs, "worker cap for parallel sections")
      ->default_val(1);
  cmd->add_flag("--quiet", c.quiet, "suppress progress output");
}

json load_config(const Common& c) {
  if (c.config_path.empty()) return json::object();
  std::ifstream in(c.config_path);
  if (!in) throw ConfigError("config file not found: " + c.config_path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + c.config_path + ": " +
                      e.what());
  }
}

fs::path resolve_out_dir(const Common& c) {
  std::string dir = c.out_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("PULSELEARN_OUT")) dir = env;
  }
  if (dir.empty()) dir = ".";
  fs::create_directories(dir);
  return fs::path(dir);
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

std::vector<double> get_double_list(const json& j, const std::string& key) {
  std::vector<double> out;
  for (const auto& v : j.at(key)) out.push_back(v.get<double>());
  return out;
}

Pulse parse_pulse(const json& cfg) {
  const double T = get_or(cfg, "T", 1.0);
  const json pj = cfg.contains("pulse") ? cfg.at("pulse") : json::object();
  const std::string kind = get_or<std::string>(pj, "kind", "sin3pi");
  Pulse base = Pulse::sin3pi(T);
  if (kind == "sin3pi") {
    base = Pulse::sin3pi(T);
  } else if (kind == "linear") {
    base = Pulse::linear(get_or(pj, "alpha", 1.0), T);
  } else if (kind == "constant") {
    base = Pulse::constant(get_or(pj, "value", 1.0), T);
  } else if (kind == "biharmonic") {
    base = Pulse::biharmonic(T);
  } else if (kind == "sinusoid") {
    if (!pj.contains("amps") || !pj.contains("freqs")) {
      throw ConfigError("sinusoid pulse needs 'amps' and 'freqs' arrays");
    }
    base = Pulse::sinusoid(get_double_list(pj, "amps"),
                           get_double_list(pj, "freqs"), T);
  } else if (kind == "piecewise") {
    if (!pj.contains("values")) {
      throw ConfigError("piecewise pulse needs a 'values' array");
    }
    base = Pulse::piecewise_constant(get_double_list(pj, "values"), T);
  } else {
    throw ConfigError("unknown pulse kind: " + kind);
  }
  if (pj.contains("perturb")) {
    const json pp = pj.at("perturb");
    base = perturb(base, get_or<std::uint64_t>(pp, "seed", 7),
                   get_or(pp, "cells", 10), get_or(pp, "eta", 0.5),
                   get_or(pp, "width", 0.02));
  }
  return base;
}

NoiseModel parse_noise(const json& cfg) {
  if (!cfg.contains("noise")) return NoiseModel::none();
  const json nj = cfg.at("noise");
  const double alpha = get_or(nj, "alpha", 1.0);
  const double delta = get_or(nj, "delta", 0.0);
  const bool symmetric = get_or(nj, "symmetric", false);
  const std::uint64_t spam_seed = get_or<std::uint64_t>(nj, "spam_seed", 2026);
  const std::int64_t shots =
      get_or<std::int64_t>(nj, "shots", NoiseModel::kInfiniteShots);
  const std::string kind_name = get_or<std::string>(nj, "kind", "bernoulli");
  NoiseKind kind;
  if (kind_name == "bernoulli") {
    kind = NoiseKind::BernoulliCounts;
  } else if (kind_name == "gaussian") {
    kind = NoiseKind::GaussianEntries;
  } else {
    throw ConfigError("unknown noise kind: " + kind_name);
  }
  if (alpha <= 0.0 || alpha > 1.0) {
    throw ConfigError("noise.alpha must lie in (0, 1]");
  }
  if (shots != NoiseModel::kInfiniteShots && shots <= 0) {
    throw ConfigError("noise.shots must be positive or -1 (exact)");
  }
  return NoiseModel::with_random_spam(alpha, delta, symmetric, spam_seed,
                                      shots, kind);
}

ReconstructionMethod parse_method(const json& cfg) {
  const std::string name = get_or<std::string>(cfg, "method", "direct");
  if (name == "direct") return ReconstructionMethod::DirectMidpoint;
  if (name == "refined") return ReconstructionMethod::RefinedMidpoint;
  if (name == "differentiating") return ReconstructionMethod::Differentiating;
  throw ConfigError("unknown reconstruction method: " + name);
}

PipelineConfig parse_pipeline(const json& cfg, const Common& common) {
  PipelineConfig pc;
  pc.pulse = parse_pulse(cfg);
  pc.T = get_or(cfg, "T", 1.0);
  pc.L = get_or(cfg, "L", 16);
  pc.noise = parse_noise(cfg);
  pc.method = parse_method(cfg);
  pc.apply_re = get_or(cfg, "apply_re", true);
  pc.seed = common.seed.value_or(get_or<std::uint64_t>(cfg, "seed", 1));
  pc.repetitions = get_or(cfg, "repetitions", 1);
  pc.n_grid = get_or(cfg, "n_grid", 512);
  pc.jobs = common.jobs;
  if (pc.L < 4) throw ConfigError("L must be at least 4");
  if (pc.T <= 0) throw ConfigError("T must be positive");
  if (pc.n_grid < 100) throw ConfigError("n_grid must be at least 100");
  if (pc.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  return pc;
}

json noise_echo(const NoiseModel& noise) {
  return {{"alpha", noise.alpha},
          {"delta", noise.delta},
          {"symmetric", noise.symmetric_diff},
          {"shots", noise.shots},
          {"kind", noise.kind == NoiseKind::BernoulliCounts ? "bernoulli"
                                                            : "gaussian"}};
}

// Normalized config echo: what the run actually used, defaults included.
json echo_pipeline(const PipelineConfig& pc) {
  json j;
  j["pulse_description"] = pc.pulse.description();
  j["T"] = pc.T;
  j["L"] = pc.L;
  j["noise"] = noise_echo(pc.noise);
  j["method"] = method_name(pc.method);
  j["apply_re"] = pc.apply_re;
  j["seed"] = pc.seed;
  j["repetitions"] = pc.repetitions;
  j["n_grid"] = pc.n_grid;
  return j;
}

// One emitter per run: computes the config hash once, stamps it into every
// CSV as a leading comment, and finishes with the manifest.
class RunOutputs {
 public:
  RunOutputs(const Common& common, std::string command, json config_echo)
      : dir_(resolve_out_dir(common)),
        command_(std::move(command)),
        echo_(std::move(config_echo)),
        hash_(fnv1a_hex(echo_.dump())) {}

  void csv(const std::string& name, const std::vector<std::string>& header,
           const std::vector<std::vector<CsvCell>>& rows) {
    write_csv((dir_ / name).string(), header, rows, "config_hash=" + hash_);
    names_.push_back(name);
  }

  void sample_csv(const std::string& name, const SampleSet& samples) {
    write_sample_set_csv((dir_ / name).string(), samples);
    names_.push_back(name);
  }

  void manifest() const {
    json m;
    m["command"] = command_;
    m["config"] = echo_;
    m["config_hash"] = hash_;
    m["outputs"] = names_;
    m["versions"] = {{"pulselearn", kToolVersion},
                     {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                   std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                   std::to_string(EIGEN_MINOR_VERSION)},
                     {"compiler", __VERSION__}};
    std::ofstream out(dir_ / "manifest.json", std::ios::trunc);
    out << m.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write manifest.json");
  }

  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::string command_;
  json echo_;
  std::string hash_;
  std::vector<std::string> names_;
};

void note(const Common& c, const std::string& line) {
  if (!c.quiet) std::cout << line << '\n';
}

std::vector<double> parse_omegas(const json& cfg) {
  if (cfg.contains("omegas")) return get_double_list(cfg, "omegas");
  if (cfg.contains("omega")) return {cfg.at("omega").get<double>()};
  return {1.0};
}

// ------------------------------------------------------------ subcommands --

int cmd_simulate(const Common& common) {
  const json cfg = load_config(common);
  const Pulse pulse = parse_pulse(cfg);
  const double T = get_or(cfg, "T", 1.0);
  const double rtol = get_or(cfg, "rtol", 1e-10);
  const std::vector<double> omegas = parse_omegas(cfg);

  std::vector<std::vector<CsvCell>> rows;
  for (double omega : omegas) {
    const Mat2c u = propagate(pulse, omega, 0.0, T, rtol);
    std::vector<CsvCell> row{omega};
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        row.emplace_back(u(r, c).real());
        row.emplace_back(u(r, c).imag());
      }
    }
    try {
      const SegmentGenerator gen = extract_generator(u, 0.0, T, omega);
      row.emplace_back(gen.a);
      row.emplace_back(gen.b);
      row.emplace_back(gen.c);
    } catch (const Error&) {
      // Antipodal propagator: log undefined, leave the cells empty.
      row.emplace_back("");
      row.emplace_back("");
      row.emplace_back("");
    }
    rows.push_back(std::move(row));
  }

  json echo;
  echo["pulse_description"] = pulse.description();
  echo["T"] = T;
  echo["rtol"] = rtol;
  echo["omegas"] = omegas;
  RunOutputs out(common, "simulate", echo);
  out.csv("propagators.csv",
          {"omega", "re00", "im00", "re01", "im01", "re10", "im10", "re11",
           "im11", "gen_a", "gen_b", "gen_c"},
          rows);
  out.manifest();
  note(common, "wrote " + (out.dir() / "propagators.csv").string());
  return 0;
}

int cmd_digitize(const Common& common) {
  const json cfg = load_config(common);
  const Pulse pulse = parse_pulse(cfg);
  const double T = get_or(cfg, "T", 1.0);
  const double omega = get_or(cfg, "omega", 1.0);
  const int L = get_or(cfg, "L", 16);
  if (L < 1) throw ConfigError("L must be >= 1");

  const PhaseVector psis = digitize(pulse, omega, L);
  const SegmentAverages avg = segment_averages(pulse, L);
  std::vector<std::vector<CsvCell>> rows;
  for (int j = 0; j < L; ++j) {
    const double mid = (j + 0.5) * T / L;
    rows.push_back(
        {j, mid, psis[j], avg.values[j], std::abs(psis[j] - avg.values[j])});
  }
  json echo;
  echo["pulse_description"] = pulse.description();
  echo["T"] = T;
  echo["omega"] = omega;
  echo["L"] = L;
  RunOutputs out(common, "digitize", echo);
  out.csv("digitized.csv",
          {"j", "t_mid", "psi_digital", "psi_average", "abs_diff"}, rows);
  out.manifest();
  note(common, "wrote " + (out.dir() / "digitized.csv").string());
  return 0;
}

int cmd_learn(const Common& common) {
  const json cfg = load_config(common);
  const PipelineConfig pc = parse_pipeline(cfg, common);

  const SampleSet suite =
      run_experiment_suite(pc.pulse, pc.L, pc.T, pc.noise, pc.seed, pc.jobs);
  const FourierStack coeffs = fourier_coeffs(augment_full_circle(suite), pc.L);
  const PhaseVector psis = estimate_phases(coeffs, SweepDirection::Stitched);
  const PhaseVector truth = segment_averages(pc.pulse, pc.L).values;

  std::vector<std::vector<CsvCell>> rows;
  for (int j = 0; j < pc.L; ++j) {
    rows.push_back({j, psis[j], truth[j], std::abs(psis[j] - truth[j])});
  }
  RunOutputs out(common, "learn", echo_pipeline(pc));
  out.sample_csv("samples.csv", suite);
  out.csv("phases.csv", {"j", "psi_hat", "psi_surrogate", "abs_diff"}, rows);
  out.manifest();
  note(common, "wrote " + (out.dir() / "phases.csv").string());
  return 0;
}

int cmd_tomography(const Common& common) {
  const json cfg = load_config(common);
  const Pulse pulse = parse_pulse(cfg);
  const double T = get_or(cfg, "T", 1.0);
  const NoiseModel noise = parse_noise(cfg);
  const std::uint64_t seed =
      common.seed.value_or(get_or<std::uint64_t>(cfg, "seed", 1));
  const std::vector<double> omegas = parse_omegas(cfg);

  const PTM reference =
      simulate_expectations(Mat2c::Identity(), noise, derive_seed(seed, 0));
  std::vector<std::vector<CsvCell>> rows;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    const Mat2c u_true = propagate(pulse, omegas[i], 0.0, T, 1e-10);
    const PTM ptm =
        simulate_expectations(u_true, noise, derive_seed(seed, i + 1));
    const Mat2c u_hat = robust_reconstruct(ptm, reference);
    // Reconstruction is blind to the global sign; score the better branch.
    const double err = std::min(spectral_norm(u_hat - u_true),
                                spectral_norm(u_hat + u_true));
    rows.push_back({omegas[i], err, ptm.clamped ? 1 : 0});
  }
  json echo;
  echo["pulse_description"] = pulse.description();
  echo["T"] = T;
  echo["omegas"] = omegas;
  echo["seed"] = seed;
  echo["noise"] = noise_echo(noise);
  RunOutputs out(common, "tomography", echo);
  out.csv("tomography.csv", {"omega", "recon_error", "clamped"}, rows);
  out.manifest();
  note(common, "wrote " + (out.dir() / "tomography.csv").string());
  return 0;
}

int cmd_reconstruct(const Common& common) {
  const json cfg = load_config(common);
  const PipelineConfig pc = parse_pipeline(cfg, common);

  // Reconstruction in isolation: exact digital surrogate in, spline out.
  const auto make = [&](int L) {
    const PhaseVector psis = segment_averages(pc.pulse, L).values;
    switch (pc.method) {
      case ReconstructionMethod::RefinedMidpoint:
        return reconstruct_midpoint(psis, pc.T, DeAverageOrder::Fourth);
      case ReconstructionMethod::Differentiating:
        return reconstruct_differentiating(psis, pc.T);
      default:
        return reconstruct_midpoint(psis, pc.T, DeAverageOrder::Second);
    }
  };
  ReconstructedPulse est = make(pc.L);
  if (pc.apply_re) est = richardson(est, make(2 * pc.L));
  const ErrorReport report = error_report(est, pc.pulse, pc.n_grid);

  std::vector<std::vector<CsvCell>> rows;
  for (const auto& r : report.table) {
    rows.push_back({r.t, r.phi_true, r.phi_est, r.abs_err});
  }
  RunOutputs out(common, "reconstruct", echo_pipeline(pc));
  out.csv("pulse_table.csv", {"t", "phi_true", "phi_est", "abs_err"}, rows);
  out.csv("error_table.csv", {"metric", "value"},
          {{"sup_interior", report.sup_interior},
           {"sup_full", report.sup_full},
           {"mean_abs", report.mean_abs}});
  out.manifest();
  note(common, "wrote " + (out.dir() / "pulse_table.csv").string());
  return 0;
}

int cmd_fisher(const Common& common) {
  const json cfg = load_config(common);
  const int L = get_or(cfg, "L", 16);
  const int N = get_or(cfg, "N", 4 * L);
  const double nu = get_or(cfg, "nu", kPi / 2.0);
  const double M = get_or(cfg, "M", 1.0);
  const std::string grid_name = get_or<std::string>(cfg, "grid", "endpoint");
  FimGrid grid;
  if (grid_name == "endpoint") {
    grid = FimGrid::Endpoint;
  } else if (grid_name == "midpoint") {
    grid = FimGrid::Midpoint;
  } else {
    throw ConfigError("unknown fim grid: " + grid_name);
  }
  if (L < 1 || N < 1 || nu <= 0 || M <= 0) {
    throw ConfigError("fisher needs L >= 1, N >= 1, nu > 0, M > 0");
  }

  const FIMatrix f = fim_toeplitz_constant(L, N, nu, M, grid);
  std::vector<std::vector<CsvCell>> fim_rows;
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) fim_rows.push_back({i, j, f.m(i, j)});
  }
  json echo;
  echo["L"] = L;
  echo["N"] = N;
  echo["nu"] = nu;
  echo["M"] = M;
  echo["grid"] = grid_name;
  RunOutputs out(common, "fisher", echo);
  out.csv("fim.csv", {"i", "j", "value"}, fim_rows);

  try {
    const CrlbReport crlb = crlb_report(f);
    std::vector<std::vector<CsvCell>> crlb_rows;
    for (int i = 0; i < L; ++i) {
      crlb_rows.push_back({CsvCell(i), crlb.variance_floor[i]});
    }
    crlb_rows.push_back(
        {"avg_correlation",
         crlb.correlation_defined ? crlb.avg_correlation : 0.0});
    out.csv("crlb.csv", {"i", "variance_floor"}, crlb_rows);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularFIM) throw;
    note(common, "information matrix singular; skipping crlb.csv");
  }
  if (nu >= kPi / 2.0 - 1e-12 && nu <= kPi + 1e-12) {
    const auto margins = loewner_check(L, M, N, nu);
    out.csv("loewner.csv", {"lower_margin", "upper_margin"},
            {{margins.first, margins.second}});
  }
  out.manifest();
  note(common, "wrote " + (out.dir() / "fim.csv").string());
  return 0;
}

int cmd_end_to_end(const Common& common) {
  const json cfg = load_config(common);
  const PipelineConfig pc = parse_pipeline(cfg, common);
  note(common, "running end-to-end pipeline: L=" + std::to_string(pc.L) +
                   ", re=" + (pc.apply_re ? std::string("on") : "off"));
  const RunResult result = run(pc);

  std::vector<std::vector<CsvCell>> pulse_rows;
  for (const auto& r : result.errors.table) {
    pulse_rows.push_back({r.t, r.phi_true, r.phi_est, r.abs_err});
  }
  std::vector<std::vector<CsvCell>> phase_rows;
  for (int j = 0; j < pc.L; ++j) {
    phase_rows.push_back({j, result.psis_hat[j], result.psis_surrogate[j],
                          result.psi_std.empty() ? 0.0 : result.psi_std[j]});
  }

  RunOutputs out(common, "end-to-end", echo_pipeline(pc));
  out.csv("pulse_table.csv", {"t", "phi_true", "phi_est", "abs_err"},
          pulse_rows);
  out.csv("error_table.csv", {"metric", "value"},
          {{"sup_interior", result.errors.sup_interior},
           {"sup_full", result.errors.sup_full},
           {"mean_abs", result.errors.mean_abs}});
  out.csv("phases.csv", {"j", "psi_hat", "psi_surrogate", "psi_std"},
          phase_rows);
  out.manifest();
  note(common,
       "interior sup error = " + format_number(result.errors.sup_interior));
  return 0;
}

int cmd_bias_sweep(const Common& common, const std::string& pulse_flag,
                   const std::string& ls_flag) {
  const json cfg = load_config(common);
  json pulse_cfg = cfg;
  if (!pulse_flag.empty()) {
    pulse_cfg["pulse"] = {{"kind", pulse_flag}};
  }
  const Pulse pulse = parse_pulse(pulse_cfg);
  std::vector<int> Ls;
  if (!ls_flag.empty()) {
    std::stringstream ss(ls_flag);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        Ls.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw ConfigError("bad --Ls entry: " + tok);
      }
    }
  } else if (cfg.contains("Ls")) {
    for (const auto& v : cfg.at("Ls")) Ls.push_back(v.get<int>());
  } else {
    Ls = {8, 16, 32, 64};
  }
  for (int L : Ls) {
    if (L < 4) throw ConfigError("every L in the sweep must be >= 4");
  }
  const bool apply_re = get_or(cfg, "apply_re", true);
  const ReconstructionMethod method = parse_method(cfg);

  const BiasScalingResult result =
      bias_scaling_experiment(pulse, Ls, apply_re, method, common.jobs);

  std::vector<std::vector<CsvCell>> rows;
  for (std::size_t i = 0; i < result.Ls.size(); ++i) {
    rows.push_back({result.Ls[i], result.interior_sup[i]});
  }
  rows.push_back({"slope", result.slope_valid ? result.slope : 0.0});
  rows.push_back({"slope_valid", result.slope_valid ? 1 : 0});

  json echo;
  echo["pulse_description"] = pulse.description();
  echo["Ls"] = Ls;
  echo["apply_re"] = apply_re;
  echo["method"] = method_name(method);
  RunOutputs out(common, "bias-sweep", echo);
  out.csv("scaling.csv", {"L", "interior_sup"}, rows);
  out.manifest();
  note(common, "slope = " + format_number(result.slope));
  return 0;
}

int cmd_variance_sweep(const Common& common) {
  const json cfg = load_config(common);
  const Pulse pulse = parse_pulse(cfg);
  const int L = get_or(cfg, "L", 40);
  const double M = get_or(cfg, "M", 1e4);
  const int reps = get_or(cfg, "reps", 50);
  const std::uint64_t seed =
      common.seed.value_or(get_or<std::uint64_t>(cfg, "seed", 1));
  if (L < 1 || reps < 2) {
    throw ConfigError("variance-sweep needs L >= 1 and reps >= 2");
  }

  const VarianceExperimentResult result =
      variance_experiment(pulse, L, M, reps, seed, common.jobs);
  std::vector<std::vector<CsvCell>> rows;
  for (int j = 0; j < L; ++j) {
    rows.push_back({j, result.per_phase_mean[j], result.per_phase_std[j]});
  }
  json echo;
  echo["pulse_description"] = pulse.description();
  echo["L"] = L;
  echo["M"] = M;
  echo["reps"] = reps;
  echo["seed"] = seed;
  RunOutputs out(common, "variance-sweep", echo);
  out.csv("variance.csv", {"j", "mean", "std"}, rows);
  out.manifest();
  note(common, "wrote " + (out.dir() / "variance.csv").string());
  return 0;
}

int cmd_dfi_sweep(const Common& common) {
  const json cfg = load_config(common);
  std::vector<int> Ls;
  if (cfg.contains("Ls")) {
    for (const auto& v : cfg.at("Ls")) Ls.push_back(v.get<int>());
  } else {
    Ls = {8, 16, 32};
  }
  const double M = get_or(cfg, "M", 1.0);
  const int n_factor = get_or(cfg, "N_factor", 4);
  if (n_factor < 1) throw ConfigError("N_factor must be >= 1");
  std::vector<double> nus;
  if (cfg.contains("nus")) {
    nus = get_double_list(cfg, "nus");
  } else {
    const double lo = get_or(cfg, "nu_min", 0.05);
    const double hi = get_or(cfg, "nu_max", kPi);
    const int count = get_or(cfg, "nu_count", 64);
    if (count < 2 || lo <= 0 || hi <= lo) {
      throw ConfigError("bad nu sweep bounds");
    }
    for (int i = 0; i < count; ++i) {
      nus.push_back(lo + (hi - lo) * i / (count - 1));
    }
  }

  std::vector<std::vector<CsvCell>> rows;
  for (int L : Ls) {
    if (L < 1) throw ConfigError("every L must be >= 1");
    const std::vector<double> dfi = dfi_sweep(L, M, n_factor * L, nus);
    for (std::size_t i = 0; i < nus.size(); ++i) {
      rows.push_back({L, nus[i], dfi[i]});
    }
  }
  json echo;
  echo["Ls"] = Ls;
  echo["M"] = M;
  echo["N_factor"] = n_factor;
  echo["nus"] = nus;
  RunOutputs out(common, "dfi-sweep", echo);
  out.csv("dfi.csv", {"L", "nu", "dfi_normalized"}, rows);
  out.manifest();
  note(common, "wrote " + (out.dir() / "dfi.csv").string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pulse-learning toolkit: simulation, estimation, diagnostics"};
  app.require_subcommand(1);

  Common common;
  std::string bias_pulse, bias_ls;

  CLI::App* simulate = app.add_subcommand("simulate", "propagate a pulse");
  CLI::App* digitize = app.add_subcommand("digitize", "segment phase readout");
  CLI::App* learn = app.add_subcommand("learn", "suite + phase estimation");
  CLI::App* tomo =
      app.add_subcommand("tomography", "single-propagator reconstruction");
  CLI::App* reco =
      app.add_subcommand("reconstruct", "spline reconstruction from averages");
  CLI::App* fisher = app.add_subcommand("fisher", "information diagnostics");
  CLI::App* e2e = app.add_subcommand("end-to-end", "full learning pipeline");
  CLI::App* bias = app.add_subcommand("bias-sweep", "bias scaling over L");
  CLI::App* var = app.add_subcommand("variance-sweep", "phase std profile");
  CLI::App* dfi = app.add_subcommand("dfi-sweep", "normalized DFI sweep");

  for (CLI::App* cmd :
       {simulate, digitize, learn, tomo, reco, fisher, e2e, bias, var, dfi}) {
    add_common_flags(cmd, common);
  }
  bias->add_option(
      "--pulse", bias_pulse,
      "pulse kind shortcut (sin3pi, biharmonic, linear, constant)");
  bias->add_option("--Ls", bias_ls, "comma-separated resolutions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // bad flags are config errors
  }

  try {
    if (simulate->parsed()) return cmd_simulate(common);
    if (digitize->parsed()) return cmd_digitize(common);
    if (learn->parsed()) return cmd_learn(common);
    if (tomo->parsed()) return cmd_tomography(common);
    if (reco->parsed()) return cmd_reconstruct(common);
    if (fisher->parsed()) return cmd_fisher(common);
    if (e2e->parsed()) return cmd_end_to_end(common);
    if (bias->parsed()) return cmd_bias_sweep(common, bias_pulse, bias_ls);
    if (var->parsed()) return cmd_variance_sweep(common);
    if (dfi->parsed()) return cmd_dfi_sweep(common);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
