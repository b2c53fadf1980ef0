#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pulselearn/reconstruct.hpp"
#include "pulselearn/tomography.hpp"

namespace pulselearn {

// Full end-to-end configuration: experiment suite -> phase learning ->
// reconstruction (optionally Richardson-paired with the 2L run).
struct PipelineConfig {
  Pulse pulse = Pulse::linear(1.0);
  double T = 1.0;
  int L = 16;
  NoiseModel noise;
  ReconstructionMethod method = ReconstructionMethod::DirectMidpoint;
  bool apply_re = true;
  std::uint64_t seed = 1;
  int repetitions = 1;
  int jobs = 1;
  int n_grid = 512;  // evaluation grid for the error table
};

struct RunResult {
  ReconstructedPulse estimate;
  ErrorReport errors;
  PhaseVector psis_hat;        // learned phases at the base resolution L
  PhaseVector psis_surrogate;  // exact cell averages (digital ground truth)
  std::vector<double> psi_std; // empirical std per phase (repetitions > 1)
  std::uint64_t seed = 0;
  std::string config_hash;
};

RunResult run(const PipelineConfig& config);

// Learned phases for one suite at resolution L (helper shared with run()).
PhaseVector learn_phases(const Pulse& pulse, int L, double T,
                         const NoiseModel& noise, std::uint64_t seed, int jobs);

struct BiasScalingResult {
  std::vector<int> Ls;
  std::vector<double> interior_sup;  // noiseless interior sup error per L
  double slope = 0.0;                // log-log fit of error vs L
  bool slope_valid = true;           // false when errors sit at the fp floor
};

// Noiseless (M = infinity) interior-bias scaling over the given resolutions.
BiasScalingResult bias_scaling_experiment(const Pulse& pulse,
                                          const std::vector<int>& Ls,
                                          bool apply_re,
                                          ReconstructionMethod method,
                                          int jobs = 1);

struct VarianceExperimentResult {
  std::vector<double> per_phase_std;
  std::vector<double> per_phase_mean;
  int reps = 0;
};

// Monte Carlo std profile of the phase estimates under Gaussian entry noise
// of variance 1/M on exact model samples (M <= 0 means noiseless).
VarianceExperimentResult variance_experiment(const Pulse& pulse, int L,
                                             double M, int reps,
                                             std::uint64_t seed = 1,
                                             int jobs = 1);

}  // namespace pulselearn
