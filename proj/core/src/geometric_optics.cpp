#include "nls/geometric_optics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nls/errors.hpp"

namespace nls {

namespace {

struct RayState {
  double x, xi, phi, dxdy, dxidy;
};

RayState operator+(RayState a, const RayState& b) {
  return {a.x + b.x, a.xi + b.xi, a.phi + b.phi, a.dxdy + b.dxdy,
          a.dxidy + b.dxidy};
}
RayState operator*(double c, const RayState& s) {
  return {c * s.x, c * s.xi, c * s.phi, c * s.dxdy, c * s.dxidy};
}

RayState ray_rhs(const Potential& p, const RayState& s) {
  double x = s.x;
  PotentialEval e = p.eval({&x, 1});
  return {s.xi, -e.grad[0], 0.5 * s.xi * s.xi - e.value, s.dxidy,
          -e.hess[0] * s.dxdy};
}

void rk4_step(const Potential& p, RayState& s, double dt) {
  RayState k1 = ray_rhs(p, s);
  RayState k2 = ray_rhs(p, s + (0.5 * dt) * k1);
  RayState k3 = ray_rhs(p, s + (0.5 * dt) * k2);
  RayState k4 = ray_rhs(p, s + dt * k3);
  s = s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Stencil start for a 4-point interpolation around q, clamped to the table.
std::size_t stencil_start(const std::vector<double>& nodes, double q) {
  auto it = std::upper_bound(nodes.begin(), nodes.end(), q);
  std::size_t cell = it == nodes.begin()
                         ? 0
                         : static_cast<std::size_t>(it - nodes.begin()) - 1;
  std::size_t lo = cell == 0 ? 0 : cell - 1;
  return std::min(lo, nodes.size() - 4);
}

template <class T>
T lagrange4(const double* nodes, const T* vals, double q) {
  T acc{};
  for (int j = 0; j < 4; ++j) {
    double w = 1;
    for (int k = 0; k < 4; ++k) {
      if (k == j) continue;
      w *= (q - nodes[k]) / (nodes[j] - nodes[k]);
    }
    acc += w * vals[j];
  }
  return acc;
}

template <class T>
T interp_row(const std::vector<double>& nodes, const T* row, double q) {
  std::size_t s = stencil_start(nodes, q);
  return lagrange4(nodes.data() + s, row + s, q);
}

// Cubic interpolation of a grid field at a point; zero outside the box
// (fields handled here are negligible at the boundary by precondition).
cdouble interp_field(const WaveField& f, double q) {
  const std::vector<double>& nodes = f.grid().coordinates();
  if (q < nodes.front() || q > nodes.back()) return 0;
  std::size_t s = stencil_start(nodes, q);
  return lagrange4(nodes.data() + s, f.values().data() + s, q);
}

}  // namespace

std::size_t RayBundle::time_index(double t) const {
  for (std::size_t i = 0; i < times.size(); ++i)
    if (std::abs(times[i] - t) <= 1e-9) return i;
  throw OutOfRange("ray bundle: t = " + std::to_string(t) +
                   " is not a recorded time");
}

std::vector<double> default_launch_set(const Grid& g) {
  if (g.dim() != 1)
    throw std::invalid_argument("default_launch_set: rays are 1D only");
  double h = g.spacing();
  double l = 1.25 * g.half_width();
  auto count = static_cast<std::size_t>(g.points_per_axis() +
                                        g.points_per_axis() / 4 + 1);
  std::vector<double> y(count);
  for (std::size_t i = 0; i < count; ++i)
    y[i] = -l + h * static_cast<double>(i);
  return y;
}

RayBundle trace_rays(const Potential& p, std::vector<double> y_samples,
                     double T, double dt_ode) {
  if (p.declared_dim() > 1)
    throw std::invalid_argument("trace_rays: rays are 1D only");
  GuardResult guard = p.self_adjointness_guard();
  if (!guard.accepted) throw GuardRejected(guard.reason);
  if (!(T > 0) || !(dt_ode > 0) || dt_ode > T)
    throw std::invalid_argument("trace_rays: need 0 < dt_ode <= T");
  if (y_samples.size() < 4)
    throw std::invalid_argument("trace_rays: need at least 4 launch points");
  for (std::size_t i = 1; i < y_samples.size(); ++i)
    if (!(y_samples[i] > y_samples[i - 1]))
      throw std::invalid_argument(
          "trace_rays: launch points must be strictly increasing");

  const std::size_t nr = y_samples.size();
  RayBundle b;
  b.y = std::move(y_samples);
  b.dt_ode = dt_ode;

  std::vector<RayState> s(nr);
  for (std::size_t r = 0; r < nr; ++r) s[r] = {b.y[r], 0, 0, 1, 0};

  double prev_min_j = 1;
  double prev_time = 0;
  auto record = [&](double t) -> double {
    b.times.push_back(t);
    double min_j = s[0].dxdy;
    for (const RayState& st : s) {
      b.x.push_back(st.x);
      b.xi.push_back(st.xi);
      b.phi.push_back(st.phi);
      b.dxdy.push_back(st.dxdy);
      b.dxidy.push_back(st.dxidy);
      min_j = std::min(min_j, st.dxdy);
    }
    return min_j;
  };
  record(0);

  const auto nsteps = static_cast<std::size_t>(std::ceil(T / dt_ode - 1e-12));
  const double dt_last = T - dt_ode * static_cast<double>(nsteps - 1);
  for (std::size_t k = 1; k <= nsteps; ++k) {
    bool last = k == nsteps;
    double dt = last ? dt_last : dt_ode;
    for (RayState& st : s) rk4_step(p, st, dt);
    if (k % 10 == 0 || last) {
      double t = last ? T : dt_ode * static_cast<double>(k);
      if (!b.times.empty() && b.times.back() == t) continue;
      double min_j = record(t);
      if (min_j <= kEpsCaustic) {
        double denom = prev_min_j - min_j;
        b.caustic_before_T =
            denom > 0
                ? prev_time + (t - prev_time) * (prev_min_j - kEpsCaustic) / denom
                : t;
        break;
      }
      prev_min_j = min_j;
      prev_time = t;
    }
  }
  return b;
}

std::optional<double> caustic_time(const RayBundle& b, double eps_caustic) {
  const std::size_t nr = b.n_rays();
  double prev_min = 0, prev_t = 0;
  for (std::size_t ti = 0; ti < b.n_times(); ++ti) {
    double min_j = b.at(b.dxdy, ti, 0);
    for (std::size_t ri = 1; ri < nr; ++ri)
      min_j = std::min(min_j, b.at(b.dxdy, ti, ri));
    if (min_j <= eps_caustic) {
      if (ti == 0) return b.times[0];
      double denom = prev_min - min_j;
      if (denom <= 0) return b.times[ti];
      return prev_t + (b.times[ti] - prev_t) * (prev_min - eps_caustic) / denom;
    }
    prev_min = min_j;
    prev_t = b.times[ti];
  }
  return std::nullopt;
}

double invert_flow(const RayBundle& b, double t, double x) {
  const std::size_t ti = b.time_index(t);
  const std::size_t nr = b.n_rays();
  const double* xs = b.x.data() + ti * nr;
  const double* js = b.dxdy.data() + ti * nr;
  if (x < xs[0] || x > xs[nr - 1])
    throw OutOfRange("invert_flow: x = " + std::to_string(x) +
                     " outside ray coverage");

  // Bracket by the sampled rays; x(t,.) is strictly monotone pre-caustic.
  auto it = std::upper_bound(xs, xs + nr, x);
  std::size_t cell = it == xs ? 0 : static_cast<std::size_t>(it - xs) - 1;
  cell = std::min(cell, nr - 2);

  auto X = [&](double yq) { return interp_row(b.y, xs, yq); };
  auto Jy = [&](double yq) { return interp_row(b.y, js, yq); };

  double yq = b.y[cell] +
              (b.y[cell + 1] - b.y[cell]) *
                  ((x - xs[cell]) / std::max(xs[cell + 1] - xs[cell], 1e-300));
  for (int it_n = 0; it_n < 50; ++it_n) {
    double f = X(yq) - x;
    if (std::abs(f) < 1e-12) return yq;
    double j = Jy(yq);
    if (j <= 0) break;
    double step = f / j;
    double next = yq - step;
    if (next < b.y.front() || next > b.y.back()) break;
    yq = next;
  }

  // Monotone bisection fallback on the bracketing cell.
  double lo = b.y[cell], hi = b.y[cell + 1];
  double flo = X(lo) - x;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = X(mid) - x;
    if (std::abs(fm) < 1e-12) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double mid = 0.5 * (lo + hi);
  if (std::abs(X(mid) - x) < 1e-9) return mid;  // interpolation floor
  throw NoConvergence("invert_flow: no root to tolerance at x = " +
                      std::to_string(x));
}

std::size_t WKBDecomposition::covered_count() const {
  std::size_t n = 0;
  for (unsigned char c : covered) n += c;
  return n;
}

WKBDecomposition wkb_field(const RayBundle& b, const WaveField& u0, double t,
                           const WaveField* u_t) {
  if (u0.grid().dim() != 1)
    throw std::invalid_argument("wkb_field: rays are 1D only");
  if (u_t && u_t->grid() != u0.grid())
    throw std::invalid_argument("wkb_field: u_t grid mismatch");
  const std::size_t ti = b.time_index(t);
  const std::size_t nr = b.n_rays();
  const double* xis = b.xi.data() + ti * nr;
  const double* phis = b.phi.data() + ti * nr;
  const double* js = b.dxdy.data() + ti * nr;

  const Grid& g = u0.grid();
  WKBDecomposition dec;
  dec.t = t;
  dec.grid = u0.grid_ptr();
  dec.phi.assign(g.size(), 0.0);
  dec.grad_phi.assign(g.size(), 0.0);
  dec.a_tilde.assign(g.size(), cdouble{});
  dec.covered.assign(g.size(), 0);
  if (u_t) dec.a.assign(g.size(), cdouble{});

  for (std::size_t i = 0; i < g.size(); ++i) {
    double xg = g.coordinate(static_cast<int>(i));
    double yq;
    try {
      yq = invert_flow(b, t, xg);
    } catch (const OutOfRange&) {
      continue;  // masked
    }
    double jv = interp_row(b.y, js, yq);
    if (jv <= kEpsCaustic) continue;
    dec.phi[i] = interp_row(b.y, phis, yq);
    dec.grad_phi[i] = interp_row(b.y, xis, yq);
    dec.a_tilde[i] = interp_field(u0, yq) / std::sqrt(jv);
    dec.covered[i] = 1;
  }
  if (u_t)
    for (std::size_t i = 0; i < g.size(); ++i)
      dec.a[i] = (*u_t)[i] * std::polar(1.0, -dec.phi[i]);
  return dec;
}

PhaseGradientReport phase_gradient_check(const RayBundle& b,
                                         const Potential& p,
                                         std::span<const double> t_samples) {
  PhaseGradientReport rep;
  for (double t : t_samples) {
    if (!(t > 0))
      throw std::invalid_argument("phase_gradient_check: t samples must be > 0");
    const std::size_t ti = b.time_index(t);
    const std::size_t nr = b.n_rays();
    double worst = 0;
    for (std::size_t ri = 0; ri < nr; ++ri) {
      double xv = b.at(b.x, ti, ri);
      PotentialEval e = p.eval({&xv, 1});
      double gv = e.grad[0];
      if (std::abs(gv) < 1e-10) continue;
      double ratio =
          std::abs(b.at(b.xi, ti, ri) + t * gv) / (t * t * std::abs(gv));
      worst = std::max(worst, ratio);
    }
    rep.per_time.push_back({t, worst});
    rep.max_ratio = std::max(rep.max_ratio, worst);
  }
  return rep;
}

double wkb_error(const WaveField& u_t, const WKBDecomposition& dec) {
  if (!dec.grid || u_t.grid() != *dec.grid)
    throw std::invalid_argument("wkb_error: grid mismatch");
  double acc = 0;
  for (std::size_t i = 0; i < u_t.size(); ++i) {
    if (!dec.covered[i]) continue;
    cdouble d = u_t[i] * std::polar(1.0, -dec.phi[i]) - dec.a_tilde[i];
    acc += std::norm(d);
  }
  return std::sqrt(acc * u_t.grid().cell_volume());
}

}  // namespace nls
