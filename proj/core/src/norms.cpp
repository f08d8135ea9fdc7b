#include "nls/norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nls/trajectory.hpp"

namespace nls {

namespace {

// int f(x) |u|^2 dx for a pointwise weight f given per grid point.
template <class F>
double weighted_mass(const WaveField& u, F&& weight) {
  const Grid& g = u.grid();
  const auto d = static_cast<std::size_t>(g.dim());
  double acc = 0;
  double x[2];
  for (std::size_t i = 0; i < u.size(); ++i) {
    g.point(i, x);
    acc += weight(std::span<const double>(x, d)) * std::norm(u[i]);
  }
  return acc * g.cell_volume();
}

double grad_sq(const WaveField& u) {
  double acc = 0;
  for (const WaveField& da : spectral_gradient(u)) {
    double na = l2_norm(da);
    acc += na * na;
  }
  return acc;
}

double grad_v_sq(const Potential& p, std::span<const double> x) {
  PotentialEval e = p.eval(x);
  double g2 = 0;
  for (std::size_t a = 0; a < x.size(); ++a) g2 += e.grad[a] * e.grad[a];
  return g2;
}

}  // namespace

double h1_norm(const WaveField& u) {
  double m = l2_norm(u);
  return std::sqrt(m * m + grad_sq(u));
}

double kinetic_energy(const WaveField& u) { return 0.5 * grad_sq(u); }

double potential_energy(const WaveField& u, const Potential& p) {
  return weighted_mass(u, [&](std::span<const double> x) { return p.value(x); });
}

double nonlinear_energy(const WaveField& u, double lambda, double sigma) {
  if (lambda == 0) return 0;
  double q = 2 * sigma + 2;
  double lp = lp_norm(u, q);
  return lambda / (sigma + 1) * std::pow(lp, q);
}

double energy(const WaveField& u, const Potential& p, double lambda,
              double sigma) {
  return kinetic_energy(u) + potential_energy(u, p) +
         nonlinear_energy(u, lambda, sigma);
}

double modified_energy(const WaveField& u, const Potential& p, double lambda,
                       double sigma) {
  double w = weighted_mass(
      u, [&](std::span<const double> x) { return grad_v_sq(p, x); });
  return kinetic_energy(u) + nonlinear_energy(u, lambda, sigma) + w;
}

double sigma_norm(const WaveField& u) {
  double xm = weighted_mass(u, [&](std::span<const double> x) {
    double r2 = 0;
    for (double c : x) r2 += c * c;
    return r2;
  });
  return h1_norm(u) + std::sqrt(xm);
}

double grad_weight_norm(const WaveField& u, const Potential& p) {
  double gm = weighted_mass(
      u, [&](std::span<const double> x) { return grad_v_sq(p, x); });
  return std::sqrt(gm);
}

double sigma_tilde_norm(const WaveField& u, const Potential& p) {
  return h1_norm(u) + grad_weight_norm(u, p);
}

double bs_norm(const WaveField& u, const Potential& p, double s) {
  if (s < 0) throw std::invalid_argument("bs_norm: s must be >= 0");
  if (!p.sign_flag())
    throw std::invalid_argument("bs_norm: potential must be nonnegative");
  const Grid& g = u.grid();
  WaveField hat = spectrum(u);
  double hs = 0;
  for (std::size_t i = 0; i < hat.size(); ++i) {
    double k2 = g.wavenumber_sq(i);
    hs += std::pow(1.0 + k2, s) * std::norm(hat[i]);
  }
  // Unitary transform: weighting the spectrum by cell_volume matches the
  // physical-space L2 convention, so s = 1 reproduces ||u||^2 + ||grad u||^2.
  hs *= g.cell_volume();
  double vm = weighted_mass(u, [&](std::span<const double> x) {
    double v = p.value(x);
    return v <= 0 ? 0.0 : std::pow(v, s);
  });
  return std::sqrt(hs) + std::sqrt(vm);
}

DiagnosticsRow diagnostics_row(double t, const WaveField& u,
                               const Potential& p, double lambda,
                               double sigma) {
  DiagnosticsRow r;
  r.t = t;
  double m = l2_norm(u);
  r.mass = m * m;
  r.kinetic = kinetic_energy(u);
  r.potential_energy = potential_energy(u, p);
  r.nonlinear_energy = nonlinear_energy(u, lambda, sigma);
  r.total_E = r.kinetic + r.potential_energy + r.nonlinear_energy;
  r.modified_E_lambda = modified_energy(u, p, lambda, sigma);
  r.sigma_norm = sigma_norm(u);
  r.sigma_tilde_norm = sigma_tilde_norm(u, p);
  r.b1_norm = p.sign_flag() ? bs_norm(u, p, 1.0)
                            : std::numeric_limits<double>::quiet_NaN();
  r.sup_norm = sup_norm(u);
  return r;
}

std::vector<DispersivePoint> dispersive_ratio(const Trajectory& traj,
                                              const WaveField& u0) {
  if (traj.params.lambda != 0)
    throw std::invalid_argument(
        "dispersive_ratio: linear (lambda = 0) trajectories only");
  double l1 = lp_norm(u0, 1.0);
  double halfd = 0.5 * u0.grid().dim();
  std::vector<DispersivePoint> out;
  out.reserve(traj.diagnostics.size());
  for (const DiagnosticsRow& r : traj.diagnostics) {
    if (r.t <= 0) continue;
    out.push_back({r.t, r.sup_norm * std::pow(r.t, halfd) / l1});
  }
  return out;
}

}  // namespace nls
