#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "nls/potential.hpp"
#include "nls/trajectory.hpp"
#include "nls/wavefield.hpp"

namespace nls {

// Raised when the amplitude sentinel fires or the field stops being finite.
// Focusing collapse is a legitimate physical outcome, not a solver bug, so
// the exception carries everything recorded up to the stop.
class BlowupDetected : public std::runtime_error {
 public:
  BlowupDetected(const std::string& what, double t, Trajectory partial);

  double t() const { return t_; }
  const Trajectory& partial() const { return *partial_; }

 private:
  double t_;
  std::shared_ptr<const Trajectory> partial_;  // keeps copies noexcept
};

// One Strang step u <- P(dt/2) K(dt) P(dt/2) u, where
//   P(s): u <- u * exp(-i s (V(x) + lambda |u|^{2 sigma}))   (pointwise,
//         exact: |u| is invariant along this sub-flow)
//   K(s): u <- IFFT( exp(-i s |k|^2 / 2) FFT(u) )            (exact free flow)
// Both sub-steps are unitary, so mass is conserved to rounding. A negative dt
// runs the reverse flow; P(s) composes exactly, so stepping dt then -dt
// returns the input up to rounding.
WaveField strang_step(const WaveField& u, const Potential& p,
                      const SimulationParams& params, double dt);

// ceil(T/dt) Strang steps from u0, the last one shortened to land exactly on
// T. Diagnostics and strided snapshots are recorded every record_every steps
// and at t = 0 and t = T. Requires the guard to accept p and u0 to be
// negligible at the grid boundary (below 1e-8 * max|u0|); throws
// GuardRejected resp. OutOfRange otherwise. Every step checks finiteness and
// the amplitude sentinel and throws BlowupDetected when either trips.
Trajectory evolve(const WaveField& u0, const Potential& p,
                  const SimulationParams& params);

}  // namespace nls
