#include "nls/propagator.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "fft.hpp"
#include "nls/errors.hpp"

namespace nls {

namespace {

std::vector<double> potential_table(const Grid& g, const Potential& p) {
  std::vector<double> table(g.size());
  double x[2];
  const auto d = static_cast<std::size_t>(g.dim());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.point(i, x);
    table[i] = p.value({x, d});
  }
  return table;
}

// exp(-i s |k|^2 / 2) with the 1/N^dim of the inverse transform folded in.
std::vector<cdouble> kinetic_table(const Grid& g, double s) {
  std::vector<cdouble> table(g.size());
  double inv = 1.0 / static_cast<double>(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    table[i] = std::polar(inv, -0.5 * s * g.wavenumber_sq(i));
  return table;
}

void phase_kick(WaveField& u, const std::vector<double>& V, double lambda,
                double sigma, double s) {
  if (lambda == 0) {
    for (std::size_t i = 0; i < u.size(); ++i)
      u[i] *= std::polar(1.0, -s * V[i]);
    return;
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    // std::pow(0, sigma) = 0 for sigma > 0, so zeros of u are harmless.
    double amp = lambda * std::pow(std::norm(u[i]), sigma);
    u[i] *= std::polar(1.0, -s * (V[i] + amp));
  }
}

void kinetic_step(WaveField& u, const std::vector<cdouble>& kin) {
  const Grid& g = u.grid();
  detail::dft(g.dim(), g.points_per_axis(), u.values().data(), -1);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] *= kin[i];
  detail::dft(g.dim(), g.points_per_axis(), u.values().data(), +1);
}

void strang_step_inplace(WaveField& u, const std::vector<double>& V,
                         const std::vector<cdouble>& kin, double lambda,
                         double sigma, double dt) {
  phase_kick(u, V, lambda, sigma, 0.5 * dt);
  kinetic_step(u, kin);
  phase_kick(u, V, lambda, sigma, 0.5 * dt);
}

// max |u|; finite = false as soon as any entry is not finite.
double sup_abs(const WaveField& u, bool& finite) {
  double m = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double a = std::norm(u[i]);
    if (!std::isfinite(a)) {
      finite = false;
      return m;
    }
    if (a > m) m = a;
  }
  finite = true;
  return std::sqrt(m);
}

void validate_params(const SimulationParams& sp) {
  if (!(sp.sigma > 0)) throw std::invalid_argument("params: sigma must be > 0");
  if (!(sp.dt > 0)) throw std::invalid_argument("params: dt must be > 0");
  if (!(sp.T > 0)) throw std::invalid_argument("params: T must be > 0");
  if (sp.dt > sp.T) throw std::invalid_argument("params: dt must be <= T");
  if (sp.record_every < 1)
    throw std::invalid_argument("params: record_every must be >= 1");
  if (!std::isfinite(sp.lambda))
    throw std::invalid_argument("params: lambda must be finite");
  if (!(sp.blowup_factor > 1))
    throw std::invalid_argument("params: blowup_factor must be > 1");
}

}  // namespace

BlowupDetected::BlowupDetected(const std::string& what, double t,
                               Trajectory partial)
    : std::runtime_error(what),
      t_(t),
      partial_(std::make_shared<const Trajectory>(std::move(partial))) {}

WaveField strang_step(const WaveField& u, const Potential& p,
                      const SimulationParams& params, double dt) {
  if (dt == 0 || !std::isfinite(dt))
    throw std::invalid_argument("strang_step: dt must be finite and nonzero");
  if (p.declared_dim() != 0 && p.declared_dim() != u.grid().dim())
    throw std::invalid_argument("strang_step: potential dim mismatch");
  WaveField out = u;
  strang_step_inplace(out, potential_table(u.grid(), p),
                      kinetic_table(u.grid(), dt), params.lambda, params.sigma,
                      dt);
  return out;
}

Trajectory evolve(const WaveField& u0, const Potential& p,
                  const SimulationParams& params) {
  validate_params(params);
  if (p.declared_dim() != 0 && p.declared_dim() != u0.grid().dim())
    throw std::invalid_argument("evolve: potential dim mismatch");
  GuardResult guard = p.self_adjointness_guard();
  if (!guard.accepted) throw GuardRejected(guard.reason);

  const Grid& g = u0.grid();
  bool finite = true;
  double max0 = sup_abs(u0, finite);
  if (!finite || max0 == 0)
    throw std::invalid_argument("evolve: initial data must be finite nonzero");
  double edge = 0;
  for (std::size_t i = 0; i < u0.size(); ++i)
    if (g.on_boundary(i)) edge = std::max(edge, std::abs(u0[i]));
  if (edge >= 1e-8 * max0)
    throw OutOfRange(
        "evolve: initial data is not negligible at the grid boundary "
        "(increase half_width)");

  const auto nsteps =
      static_cast<std::size_t>(std::ceil(params.T / params.dt - 1e-12));
  const double dt_last = params.T - params.dt * static_cast<double>(nsteps - 1);

  std::vector<double> V = potential_table(g, p);
  std::vector<cdouble> kin = kinetic_table(g, params.dt);

  Trajectory traj{params, {}, {}, {}, u0, 0, StopReason::Finished, 0};
  auto record = [&](double t, const WaveField& u) {
    traj.times.push_back(t);
    traj.snapshots.push_back(u);
    traj.diagnostics.push_back(
        diagnostics_row(t, u, p, params.lambda, params.sigma));
  };

  WaveField u = u0;
  record(0.0, u);
  for (std::size_t k = 1; k <= nsteps; ++k) {
    bool last = (k == nsteps);
    double dt = last ? dt_last : params.dt;
    if (last && dt_last != params.dt) kin = kinetic_table(g, dt_last);
    strang_step_inplace(u, V, kin, params.lambda, params.sigma, dt);
    double t = last ? params.T : params.dt * static_cast<double>(k);
    traj.steps_taken = k;

    double amp = sup_abs(u, finite);
    if (!finite) {
      traj.final_state = u;
      traj.final_time = t;
      traj.stop = StopReason::NonFinite;
      double t_stop = traj.final_time;
      throw BlowupDetected(
          "field stopped being finite at t = " + std::to_string(t), t_stop,
          std::move(traj));
    }
    if (amp > params.blowup_factor * max0) {
      record(t, u);
      traj.final_state = u;
      traj.final_time = t;
      traj.stop = StopReason::BlowupSentinel;
      throw BlowupDetected("blow-up sentinel: max|u| = " + std::to_string(amp) +
                               " exceeded " +
                               std::to_string(params.blowup_factor) +
                               " * initial at t = " + std::to_string(t),
                           t, std::move(traj));
    }
    if (k % static_cast<std::size_t>(params.record_every) == 0 || last)
      if (traj.times.back() != t) record(t, u);
  }

  traj.final_state = std::move(u);
  traj.final_time = params.T;
  traj.stop = StopReason::Finished;
  return traj;
}

}  // namespace nls
