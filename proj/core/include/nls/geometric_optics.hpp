#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nls/grid.hpp"
#include "nls/potential.hpp"
#include "nls/wavefield.hpp"

namespace nls {

// Classical bicharacteristics of 1/2 xi^2 + V(x) launched from rest:
// x(0,y) = y, xi(0,y) = 0, with the eikonal phase along rays
// (d/dt phi = 1/2 xi^2 - V) and the variational fields d/dt dxdy = dxidy,
// d/dt dxidy = -V''(x) dxdy. The ray machinery is one-dimensional; only
// the evolution grid supports d = 2.
struct RayBundle {
  std::vector<double> y;      // launch points, strictly increasing
  std::vector<double> times;  // recorded times, starting at 0
  // Record matrices, row-major: entry (time ti, ray ri) at ti*n_rays + ri.
  std::vector<double> x, xi, phi, dxdy, dxidy;
  double dt_ode = 0;
  // First time min_y J crossed eps_caustic (linearly interpolated), when a
  // caustic formed before the requested final time. The bundle keeps the
  // crossing row and truncates everything after it; metadata, not an error.
  std::optional<double> caustic_before_T;

  std::size_t n_rays() const { return y.size(); }
  std::size_t n_times() const { return times.size(); }
  double at(const std::vector<double>& field, std::size_t ti,
            std::size_t ri) const {
    return field[ti * y.size() + ri];
  }
  // Jacobi determinant det grad_y x; in one dimension it is dxdy itself.
  const std::vector<double>& J() const { return dxdy; }
  // Index of the recorded time equal to t (within 1e-9); throws OutOfRange.
  std::size_t time_index(double t) const;
};

// Caustic threshold used to truncate bundles and mask WKB fields.
inline constexpr double kEpsCaustic = 1e-6;

// Launch lattice co-located with the grid, extended 25% beyond +-L at the
// same spacing, so flow inversion still covers the box after transport.
std::vector<double> default_launch_set(const Grid& g);

// Classic 4th-order one-step integration of the joined ray system for all
// launch points, fixed step dt_ode (final step shortened to land on T).
// Records every 10 sub-steps and at T. Requires the self-adjointness guard
// to accept p.
RayBundle trace_rays(const Potential& p, std::vector<double> y_samples,
                     double T, double dt_ode);

// First recorded time with min_y J <= eps_caustic, linearly interpolated
// between consecutive records; nullopt if no crossing is recorded.
std::optional<double> caustic_time(const RayBundle& b, double eps_caustic);

// Solves x(t, y) = x for y by Newton iteration on the interpolated ray
// positions (4-point Lagrange), seeded from the nearest sampled ray, with
// monotone bisection as fallback. t must be a recorded time before the
// caustic. Throws OutOfRange if x lies outside the swept range,
// NoConvergence if both iterations fail.
double invert_flow(const RayBundle& b, double t, double x);

// u(t,x) = a(t,x) e^{i phi(t,x)} split on the grid, with the transported
// amplitude a_tilde(t,x) = u0(y(t,x)) / sqrt(J(y(t,x))).
struct WKBDecomposition {
  double t = 0;
  GridPtr grid;
  std::vector<double> phi;
  std::vector<double> grad_phi;      // = xi(t, y(t,x))
  std::vector<cdouble> a;            // u_t e^{-i phi}; empty without u_t
  std::vector<cdouble> a_tilde;      // u0(y)/sqrt(J), 0 where not covered
  std::vector<unsigned char> covered;

  std::size_t covered_count() const;
};

// Inverts the flow at every grid point and assembles the decomposition.
// Points outside ray coverage (or where J <= eps_caustic) are masked and
// set to zero. When u_t is supplied, a = u_t * e^{-i phi} is filled in.
WKBDecomposition wkb_field(const RayBundle& b, const WaveField& u0, double t,
                           const WaveField* u_t = nullptr);

struct PhaseGradientReport {
  struct Sample {
    double t = 0;
    double max_ratio = 0;
  };
  std::vector<Sample> per_time;
  double max_ratio = 0;
};

// max over rays of |grad phi(t,x) + t grad V(x)| / (t^2 |grad V(x)|) per
// sampled time (grad phi at a ray position is exactly xi, no interpolation).
// Points with |grad V| < 1e-10 are skipped. Each t must be a recorded time.
PhaseGradientReport phase_gradient_check(const RayBundle& b,
                                         const Potential& p,
                                         std::span<const double> t_samples);

// || u_t e^{-i phi} - a_tilde ||_{L2} over covered points.
double wkb_error(const WaveField& u_t, const WKBDecomposition& dec);

}  // namespace nls
