#pragma once

#include <cstddef>
#include <vector>

#include "nls/norms.hpp"
#include "nls/wavefield.hpp"

namespace nls {

struct SimulationParams {
  double lambda = 0;  // nonlinearity strength, sign included
  double sigma = 1;   // |u|^{2 sigma} u, sigma > 0
  double dt = 1e-3;
  double T = 1;
  int record_every = 10;       // diagnostic stride, in steps
  double blowup_factor = 1e6;  // sentinel: stop once max|u| > factor * max|u0|
};

enum class StopReason {
  Finished,
  BlowupSentinel,
  NonFinite,
};

// Recorded history of one run. times, snapshots and diagnostics are aligned:
// entry i was taken at times[i], with times strictly increasing from 0.
struct Trajectory {
  SimulationParams params;
  std::vector<double> times;
  std::vector<WaveField> snapshots;
  std::vector<DiagnosticsRow> diagnostics;
  WaveField final_state;
  double final_time = 0;
  StopReason stop = StopReason::Finished;
  std::size_t steps_taken = 0;
};

}  // namespace nls
