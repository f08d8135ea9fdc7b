#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nls/config.hpp"
#include "nls/io.hpp"
#include "nls/potential.hpp"
#include "nls/trajectory.hpp"
#include "nls/wavefield.hpp"

namespace nls {

// Named, reproducible procedures tying runs to checkable claims. Each one
// writes its artifacts (diagnostics CSV, plot data, report.json) under
// out_dir; pass an empty out_dir to compute without touching the disk.
// Everything is deterministic: same inputs, byte-identical outputs.

// Evolve and measure worst-case relative drift of mass and total energy.
// The energy drift is normalized by the t=0 magnitude sum
// kinetic + |potential| + |nonlinear| to stay meaningful when cancellation
// makes E itself small. PASS: mass drift < 1e-10, energy drift < 1e-5.
ExperimentReport exp_conservation(const WaveField& u0, const Potential& p,
                                  const SimulationParams& params,
                                  const std::string& out_dir);

// Expected value of sup|u(t)| t^{d/2} / ||u0||_1 as a function of t.
using RatioCurve = std::function<double(double)>;

// Linear run (lambda must be 0); records the dispersive ratio curve.
// With an expected curve: PASS iff the measured ratio matches within 1%
// for t in [0.1, T]. Without one the curve is informational (PASS).
ExperimentReport exp_dispersive(const WaveField& u0, const Potential& p,
                                const SimulationParams& params,
                                const std::string& out_dir,
                                const RatioCurve& expected = {});

// Fits the worst logarithmic slope C_fit of the modified energy over the
// recorded intervals. PASS: the e^{C_fit t} envelope holds and
// C_fit <= 2 (1 + 2 sup|hess V|). Requires an at-most-quadratic potential
// and lambda >= 0 or sigma < 2/d (the regime the bound is proved in).
ExperimentReport exp_gronwall(const WaveField& u0, const Potential& p,
                              const SimulationParams& params,
                              const std::string& out_dir);

// Traces rays, evolves u0 linearly to each sample time (dt = 1e-4), and
// fits ||a - a_tilde|| against t. Sample times must be positive multiples
// of 1e-3 (the bundle's record grid). PASS: the fit is linear through the
// origin: R^2 > 0.99, |intercept| < 1e-3, relative residual < 10%.
ExperimentReport exp_wkb(const GridPtr& g, const Potential& p,
                         const WaveField& u0, std::vector<double> t_samples,
                         const std::string& out_dir);

// Truncation sweep behind the sharpness claim: for each R evolve the
// profile cut off at radius R (linear flow, time tau) on one common grid
// with L = 4 max R, and record g(R) = ||grad u(tau)|| against
// w(R) = ||u0^R grad V||. For unbounded grad V, PASS requires g strictly
// increasing with g_last/g_first >= 2.5 and g/w within 20% of tau at the
// largest R, plus a bounded-gradient control (SoftLinear) whose growth
// stays below 1.2. For a bounded-gradient potential only the saturation
// check applies. Throws GridBudgetExceeded if the sweep needs more than
// grid_budget points per axis. oversample doubles the base resolution
// (spacing 1/32) that many times over; verdicts must be stable under it.
ExperimentReport exp_sharp_weight(const Potential& p, const IcSpec& profile,
                                  std::vector<double> radii, double tau,
                                  const std::string& out_dir,
                                  int grid_budget = 1 << 15,
                                  int oversample = 1);

// Focusing/defocusing pair at matched data. The focusing run must trip the
// amplitude sentinel (factor 2, declared here) before T; the defocusing
// run must complete without tripping it. Qualitative by design.
ExperimentReport exp_blowup_regime(const GridPtr& g, const IcSpec& ic,
                                   const SimulationParams& base,
                                   const std::string& out_dir);

const std::vector<std::string>& experiment_names();

// Dispatch by cfg.experiment->name, building inputs from the config and
// writing under out_dir/<name>. Unlisted names throw std::invalid_argument.
ExperimentReport run_experiment(const RunConfig& cfg,
                                const std::string& out_dir);

}  // namespace nls
