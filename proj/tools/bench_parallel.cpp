// Timing harness: runs the two parallel kernels (experiment suite, Monte
// Carlo variance profile) once with the serial reference path (jobs = 1) and
// once with the OpenMP path at the hardware thread count, checks that both
// produce bit-identical results, and prints the speedup.

#include <chrono>
#include <cstdio>
#include <functional>

#include "pulselearn/parallel.hpp"
#include "pulselearn/pipeline.hpp"

using namespace pulselearn;

namespace {

double time_once(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const std::chrono::duration<double> dt =
      std::chrono::steady_clock::now() - start;
  return dt.count();
}

void report(const char* name, double serial_s, double parallel_s, int jobs,
            bool identical) {
  std::printf("%-24s serial %8.3fs   jobs=%-2d %8.3fs   speedup %5.2fx   %s\n",
              name, serial_s, jobs, parallel_s, serial_s / parallel_s,
              identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
  // Exercise the OpenMP path with at least four workers even on small hosts;
  // oversubscription is harmless and the bit-identity check is the point.
  const int hardware = resolve_jobs(0);
  const int jobs = hardware < 4 ? 4 : hardware;
  std::printf("hardware worker count: %d (benchmarking with %d)\n", hardware,
              jobs);

  {
    const Pulse pulse = Pulse::sin3pi();
    const NoiseModel noise = NoiseModel::none();
    SampleSet serial, parallel;
    const double t1 = time_once(
        [&] { serial = run_experiment_suite(pulse, 24, 1.0, noise, 3, 1); });
    const double t2 = time_once([&] {
      parallel = run_experiment_suite(pulse, 24, 1.0, noise, 3, jobs);
    });
    bool same = serial.thetas == parallel.thetas;
    for (std::size_t i = 0; same && i < serial.unitaries.size(); ++i) {
      same = serial.unitaries[i] == parallel.unitaries[i];
    }
    report("experiment suite", t1, t2, jobs, same);
  }

  {
    const Pulse pulse = Pulse::sin3pi();
    VarianceExperimentResult serial, parallel;
    const double t1 = time_once(
        [&] { serial = variance_experiment(pulse, 24, 1e4, 400, 5, 1); });
    const double t2 = time_once(
        [&] { parallel = variance_experiment(pulse, 24, 1e4, 400, 5, jobs); });
    const bool same = serial.per_phase_std == parallel.per_phase_std &&
                      serial.per_phase_mean == parallel.per_phase_mean;
    report("variance monte carlo", t1, t2, jobs, same);
  }

  return 0;
}
