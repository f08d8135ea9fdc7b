#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "helpers.hpp"
#include "nls/norms.hpp"
#include "nls/potential.hpp"
#include "nls/trajectory.hpp"

using namespace nls;

// Most oracles below are gaussian integrals of the harmonic ground state
// u0 = pi^{-1/4} exp(-x^2/2): ||u0|| = 1, ||u0'||^2 = 1/2, int x^2|u0|^2 = 1/2,
// int |u0|^4 = 1/sqrt(2 pi).

TEST_CASE("energy pieces of the ground state") {
  GridPtr g = make_grid(1, 16.0, 1024);
  WaveField u = testutil::ground_state(g);
  Potential hp = Potential::harmonic(1.0);

  CHECK(h1_norm(u) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
  CHECK(kinetic_energy(u) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(potential_energy(u, hp) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(nonlinear_energy(u, 1.0, 1.0) ==
        doctest::Approx(0.5 / std::sqrt(2 * M_PI)).epsilon(1e-12));
  CHECK(energy(u, hp, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(energy(u, hp, 1.0, 1.0) ==
        doctest::Approx(0.5 + 0.5 / std::sqrt(2 * M_PI)).epsilon(1e-12));
  // modified: the int V|u|^2 = 1/4 term is replaced by int x^2|u|^2 = 1/2
  CHECK(modified_energy(u, hp, 0.0, 1.0) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("weighted norms of the ground state") {
  GridPtr g = make_grid(1, 16.0, 1024);
  WaveField u = testutil::ground_state(g);
  Potential hp = Potential::harmonic(1.0);
  Potential st = Potential::stark(1.0);

  CHECK(sigma_norm(u) ==
        doctest::Approx(std::sqrt(1.5) + std::sqrt(0.5)).epsilon(1e-12));
  // grad V = x for the trap, so the weight part equals ||x u||
  CHECK(grad_weight_norm(u, hp) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(sigma_tilde_norm(u, hp) ==
        doctest::Approx(std::sqrt(1.5) + std::sqrt(0.5)).epsilon(1e-12));
  // |grad V| = 1 for the uniform force: weight part is just the mass
  CHECK(grad_weight_norm(u, st) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sigma_tilde_norm(u, st) ==
        doctest::Approx(std::sqrt(1.5) + 1.0).epsilon(1e-12));
  // B^1: sqrt(1 + 1/2) + sqrt(int (x^2/2)|u|^2)
  CHECK(bs_norm(u, hp, 1.0) ==
        doctest::Approx(std::sqrt(1.5) + 0.5).epsilon(1e-12));
}

TEST_CASE("bs norm requires a nonnegative potential and s >= 0") {
  GridPtr g = make_grid(1, 16.0, 256);
  WaveField u = testutil::ground_state(g);
  CHECK_THROWS_AS(bs_norm(u, Potential::stark(1.0), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(bs_norm(u, Potential::inverted_harmonic(1.0), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(bs_norm(u, Potential::harmonic(1.0), -0.5),
                  std::invalid_argument);
  // s = 2 brings in the full H^2 weight; finite and larger than B^1
  CHECK(bs_norm(u, Potential::harmonic(1.0), 2.0) >
        bs_norm(u, Potential::harmonic(1.0), 1.0));
}

TEST_CASE("soft-decay profile gradient oracle") {
  // u0 = <x>^{-1}: ||u0'||^2 = int x^2 <x>^{-6} = pi/8. Slow decay, so a
  // large box keeps the tail and the periodic seam negligible.
  GridPtr g = make_grid(1, 256.0, 16384);
  WaveField u = sample_field(
      g, [](double x) { return 1.0 / std::sqrt(1.0 + x * x); });
  double grad_sq = 2.0 * kinetic_energy(u);
  CHECK(grad_sq == doctest::Approx(M_PI / 8).epsilon(1e-3));
}

TEST_CASE("sigma controls sigma_tilde for at-most-quadratic potentials") {
  // |grad V(x)| <= |grad V(0)| + sup|hess V| |x| pointwise gives
  // sigma_tilde <= max(1, sup|hess V|) sigma + |grad V(0)| ||u||.
  GridPtr g = make_grid(1, 16.0, 512);
  std::vector<Potential> pots = {
      Potential::harmonic(1.0),    Potential::harmonic(2.2),
      Potential::stark(0.7),       Potential::soft_linear(),
      Potential::inverted_harmonic(0.9),
      Potential::anisotropic_quadratic(1, {0.9, 0, 0, 0}, {0.3, 0}, 0.1),
  };
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    WaveField u = testutil::random_band_limited(g, seed);
    for (const Potential& p : pots) {
      double c1 = std::max(1.0, p.hessian_sup_norm());
      double c2 = p.grad_at_origin();
      CHECK(sigma_tilde_norm(u, p) <=
            c1 * sigma_norm(u) + c2 * l2_norm(u) + 1e-12);
    }
  }
}

TEST_CASE("b1 and sigma_tilde are comparable for the harmonic trap") {
  GridPtr g = make_grid(1, 16.0, 512);
  Potential hp = Potential::harmonic(1.0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    WaveField u = testutil::random_band_limited(g, seed);
    double r = bs_norm(u, hp, 1.0) / sigma_tilde_norm(u, hp);
    CHECK(r > 0.25);
    CHECK(r < 4.0);
  }
}

TEST_CASE("diagnostics row") {
  GridPtr g = make_grid(1, 16.0, 512);
  WaveField u = testutil::ground_state(g);
  Potential hp = Potential::harmonic(1.0);
  DiagnosticsRow r = diagnostics_row(0.5, u, hp, 1.0, 1.0);
  CHECK(r.t == 0.5);
  CHECK(r.mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.kinetic == doctest::Approx(kinetic_energy(u)).epsilon(1e-14));
  CHECK(r.potential_energy ==
        doctest::Approx(potential_energy(u, hp)).epsilon(1e-14));
  CHECK(r.total_E == doctest::Approx(energy(u, hp, 1.0, 1.0)).epsilon(1e-14));
  CHECK(r.modified_E_lambda ==
        doctest::Approx(modified_energy(u, hp, 1.0, 1.0)).epsilon(1e-14));
  CHECK(r.sigma_norm == doctest::Approx(sigma_norm(u)).epsilon(1e-14));
  CHECK(r.sigma_tilde_norm ==
        doctest::Approx(sigma_tilde_norm(u, hp)).epsilon(1e-14));
  CHECK(r.b1_norm == doctest::Approx(bs_norm(u, hp, 1.0)).epsilon(1e-14));
  CHECK(r.sup_norm == doctest::Approx(std::pow(M_PI, -0.25)).epsilon(1e-12));

  // sign-indefinite potential: b1 column is NaN, everything else filled
  DiagnosticsRow rs = diagnostics_row(0.0, u, Potential::stark(1.0), 0.0, 1.0);
  CHECK(std::isnan(rs.b1_norm));
  CHECK(rs.mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dispersive ratio rejects nonlinear trajectories") {
  GridPtr g = make_grid(1, 16.0, 256);
  WaveField u = testutil::ground_state(g);
  SimulationParams params;
  params.lambda = 1.0;
  Trajectory traj{params, {0.0}, {u}, {diagnostics_row(0, u, Potential::zero(), 1, 1)},
                  u, 0.0, StopReason::Finished, 0};
  CHECK_THROWS_AS(dispersive_ratio(traj, u), std::invalid_argument);
}
