#pragma once

#include <vector>

#include "nls/potential.hpp"
#include "nls/spectral.hpp"
#include "nls/wavefield.hpp"

namespace nls {

struct Trajectory;  // propagator.hpp

// One record of scalar diagnostics. Field order matches the CSV schema.
struct DiagnosticsRow {
  double t = 0;
  double mass = 0;              // ||u||^2
  double kinetic = 0;           // 1/2 ||grad u||^2
  double potential_energy = 0;  // int V |u|^2
  double nonlinear_energy = 0;  // lambda/(sigma+1) ||u||_{2sigma+2}^{2sigma+2}
  double total_E = 0;
  double modified_E_lambda = 0;
  double sigma_norm = 0;
  double sigma_tilde_norm = 0;
  double b1_norm = 0;  // NaN when V takes negative values
  double sup_norm = 0;
};

double h1_norm(const WaveField& u);          // sqrt(||u||^2 + ||grad u||^2)
double kinetic_energy(const WaveField& u);   // 1/2 ||grad u||^2
double potential_energy(const WaveField& u, const Potential& p);
double nonlinear_energy(const WaveField& u, double lambda, double sigma);

// E = 1/2||grad u||^2 + int V|u|^2 + lambda/(sigma+1) ||u||_{2s+2}^{2s+2}.
double energy(const WaveField& u, const Potential& p, double lambda,
              double sigma);

// The Gronwall-friendly variant: the int V|u|^2 term is replaced by
// int |grad V|^2 |u|^2, so d/dt is controlled by (1 + 2 sup|hess V|) times
// the energy itself.
double modified_energy(const WaveField& u, const Potential& p, double lambda,
                       double sigma);

// ||u||_{H1} + || |x| u ||.
double sigma_norm(const WaveField& u);
// || |grad V| u ||, the weight half of the SigmaTilde norm.
double grad_weight_norm(const WaveField& u, const Potential& p);
// ||u||_{H1} + || |grad V| u ||.
double sigma_tilde_norm(const WaveField& u, const Potential& p);
// ||u||_{H^s} + || V^{s/2} u ||, H^s via the (1+|k|^2)^{s/2} multiplier.
// Requires a nonnegative potential and s >= 0.
double bs_norm(const WaveField& u, const Potential& p, double s);

DiagnosticsRow diagnostics_row(double t, const WaveField& u,
                               const Potential& p, double lambda,
                               double sigma);

struct DispersivePoint {
  double t = 0;
  double ratio = 0;  // ||u(t)||_inf * t^{d/2} / ||u0||_L1
};

// Linear-decay diagnostic; requires a trajectory recorded with lambda == 0.
std::vector<DispersivePoint> dispersive_ratio(const Trajectory& traj,
                                              const WaveField& u0);

}  // namespace nls
