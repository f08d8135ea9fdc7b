#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "nls/grid.hpp"
#include "nls/potential.hpp"

using namespace nls;

namespace {

// Central finite differences of value()/grad as an independent oracle for
// the closed-form derivatives.
void check_derivatives(const Potential& p, std::span<const double> pt) {
  const int d = int(pt.size());
  const double h = 1e-3;
  PotentialEval e = p.eval(pt);
  CHECK(e.value == doctest::Approx(p.value(pt)).epsilon(1e-14));

  double x[2] = {pt[0], d > 1 ? pt[1] : 0.0};
  for (int a = 0; a < d; ++a) {
    double keep = x[a];
    x[a] = keep + h;
    double vp = p.value(std::span<const double>(x, d));
    x[a] = keep - h;
    double vm = p.value(std::span<const double>(x, d));
    x[a] = keep;
    CHECK(e.grad[a] == doctest::Approx((vp - vm) / (2 * h)).epsilon(1e-5));
  }
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      double ka = x[a], kb = x[b];
      double fd;
      if (a == b) {
        double v0 = p.value(std::span<const double>(x, d));
        x[a] = ka + h;
        double vp = p.value(std::span<const double>(x, d));
        x[a] = ka - h;
        double vm = p.value(std::span<const double>(x, d));
        x[a] = ka;
        fd = (vp - 2 * v0 + vm) / (h * h);
      } else {
        x[a] = ka + h, x[b] = kb + h;
        double vpp = p.value(std::span<const double>(x, d));
        x[b] = kb - h;
        double vpm = p.value(std::span<const double>(x, d));
        x[a] = ka - h, x[b] = kb + h;
        double vmp = p.value(std::span<const double>(x, d));
        x[b] = kb - h;
        double vmm = p.value(std::span<const double>(x, d));
        x[a] = ka, x[b] = kb;
        fd = (vpp - vpm - vmp + vmm) / (4 * h * h);
      }
      double got = e.hess[a * 2 + b];
      CHECK(got == doctest::Approx(fd).epsilon(1e-4).scale(1.0));
      CHECK(e.hess[a * 2 + b] ==
            doctest::Approx(e.hess[b * 2 + a]).epsilon(1e-14));
    }
  }
  // grad_lap[a] = d/dx_a (laplacian V), cross-checked from grad via second
  // differences along every axis.
  for (int a = 0; a < d; ++a) {
    double fd = 0;
    for (int b = 0; b < d; ++b) {
      double kb = x[b];
      x[b] = kb + h;
      double gp = p.eval(std::span<const double>(x, d)).grad[a];
      x[b] = kb - h;
      double gm = p.eval(std::span<const double>(x, d)).grad[a];
      x[b] = kb;
      double g0 = p.eval(std::span<const double>(x, d)).grad[a];
      fd += (gp - 2 * g0 + gm) / (h * h);
    }
    CHECK(e.grad_lap[a] == doctest::Approx(fd).epsilon(1e-3).scale(1.0));
  }
}

}  // namespace

TEST_CASE("closed-form derivatives match finite differences, 1d") {
  std::vector<Potential> pots = {
      Potential::zero(),
      Potential::harmonic(1.0),
      Potential::harmonic(2.5),
      Potential::inverted_harmonic(1.3),
      Potential::stark(0.8),
      Potential::soft_linear(),
      Potential::soft_power(3.0),
      Potential::soft_power(2.5),
      Potential::negated_soft_power(3.0),
      Potential::anisotropic_quadratic(1, {0.7, 0, 0, 0}, {0.2, 0}, -1.0),
  };
  std::vector<double> points = {0.0, 0.7, -1.3, 2.5};
  for (const Potential& p : pots)
    for (double x : points) check_derivatives(p, std::span<const double>(&x, 1));
}

TEST_CASE("closed-form derivatives match finite differences, 2d") {
  std::array<double, 2> om = {1.0, 2.0};
  std::array<double, 2> fl = {0.5, -0.3};
  std::vector<Potential> pots = {
      Potential::harmonic(std::span<const double>(om)),
      Potential::stark(std::span<const double>(fl)),
      Potential::soft_linear(),
      Potential::soft_power(3.0),
      Potential::anisotropic_quadratic(2, {1.0, 0.3, 0.3, 2.0}, {0.1, -0.2},
                                       0.5),
  };
  std::vector<std::array<double, 2>> points = {
      {0.0, 0.0}, {0.3, -1.1}, {1.7, 0.4}};
  for (const Potential& p : pots)
    for (const auto& pt : points)
      check_derivatives(p, std::span<const double>(pt.data(), 2));
}

TEST_CASE("spot values") {
  double x = 1.5;
  CHECK(Potential::harmonic(2.0).value({&x, 1}) ==
        doctest::Approx(0.5 * 4.0 * 2.25));
  CHECK(Potential::stark(0.7).value({&x, 1}) == doctest::Approx(1.05));
  CHECK(Potential::soft_linear().value({&x, 1}) ==
        doctest::Approx(std::sqrt(3.25)));
  CHECK(Potential::soft_power(3.0).value({&x, 1}) ==
        doctest::Approx(std::pow(3.25, 1.5)));
  CHECK(Potential::inverted_harmonic(1.0).value({&x, 1}) ==
        doctest::Approx(-1.125));
  double zero = 0;
  CHECK(Potential::soft_linear().value({&zero, 1}) == doctest::Approx(1.0));
  CHECK(Potential::soft_linear().eval({&zero, 1}).grad[0] ==
        doctest::Approx(0.0));
}

TEST_CASE("classification") {
  auto cls = [](const Potential& p) { return p.classify(); };
  CHECK(cls(Potential::zero()).kind == PotentialClass::Kind::AtMostQuadratic);
  CHECK(cls(Potential::zero()).grad_bounded);
  CHECK(cls(Potential::harmonic(1.0)).kind ==
        PotentialClass::Kind::AtMostQuadratic);
  CHECK_FALSE(cls(Potential::harmonic(1.0)).grad_bounded);
  CHECK(cls(Potential::stark(1.0)).grad_bounded);
  CHECK(cls(Potential::soft_linear()).grad_bounded);
  CHECK_FALSE(cls(Potential::inverted_harmonic(1.0)).grad_bounded);
  PotentialClass sp = cls(Potential::soft_power(3.0));
  CHECK(sp.kind == PotentialClass::Kind::SuperQuadratic);
  CHECK(sp.growth == doctest::Approx(3.0));
  CHECK_FALSE(sp.grad_bounded);
  // pure linear part: quadratic family but bounded gradient
  Potential lin =
      Potential::anisotropic_quadratic(1, {0, 0, 0, 0}, {1.0, 0}, 0.0);
  CHECK(cls(lin).grad_bounded);
}

TEST_CASE("sign flag") {
  CHECK(Potential::zero().sign_flag());
  CHECK(Potential::harmonic(1.0).sign_flag());
  CHECK(Potential::soft_linear().sign_flag());
  CHECK(Potential::soft_power(3.0).sign_flag());
  CHECK_FALSE(Potential::stark(1.0).sign_flag());
  CHECK_FALSE(Potential::inverted_harmonic(1.0).sign_flag());
  CHECK_FALSE(Potential::negated_soft_power(3.0).sign_flag());
  CHECK(Potential::anisotropic_quadratic(1, {2, 0, 0, 0}, {0, 0}, 0.0)
            .sign_flag());
  // completed square exactly touching zero: (x+1)^2/2
  CHECK(Potential::anisotropic_quadratic(1, {1, 0, 0, 0}, {1, 0}, 0.5)
            .sign_flag());
  CHECK_FALSE(Potential::anisotropic_quadratic(1, {1, 0, 0, 0}, {1, 0}, 0.4)
                  .sign_flag());
}

TEST_CASE("hessian sup norm") {
  CHECK(Potential::harmonic(2.0).hessian_sup_norm() == doctest::Approx(4.0));
  CHECK(Potential::stark(3.0).hessian_sup_norm() == doctest::Approx(0.0));
  CHECK(Potential::soft_linear().hessian_sup_norm() == doctest::Approx(1.0));
  CHECK(std::isinf(Potential::soft_power(3.0).hessian_sup_norm()));
  // symmetric 2x2 spectral norm: eigenvalues of {{1,.3},{.3,2}}
  double want = (3.0 + std::sqrt(1.0 + 4 * 0.09)) / 2.0;
  CHECK(Potential::anisotropic_quadratic(2, {1.0, 0.3, 0.3, 2.0}, {0, 0}, 0)
            .hessian_sup_norm() == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("gradient at the origin") {
  CHECK(Potential::harmonic(5.0).grad_at_origin() == doctest::Approx(0.0));
  CHECK(Potential::stark(-2.0).grad_at_origin() == doctest::Approx(2.0));
  CHECK(Potential::soft_linear().grad_at_origin() == doctest::Approx(0.0));
  CHECK(Potential::anisotropic_quadratic(2, {1, 0, 0, 1}, {0.3, -0.4}, 0)
            .grad_at_origin() == doctest::Approx(0.5));
}

TEST_CASE("self-adjointness guard") {
  CHECK(Potential::zero().self_adjointness_guard().accepted);
  CHECK(Potential::harmonic(1.0).self_adjointness_guard().accepted);
  CHECK(Potential::inverted_harmonic(4.0).self_adjointness_guard().accepted);
  CHECK(Potential::stark(10.0).self_adjointness_guard().accepted);
  CHECK(Potential::soft_power(3.0).self_adjointness_guard().accepted);
  GuardResult r = Potential::negated_soft_power(3.0).self_adjointness_guard();
  CHECK_FALSE(r.accepted);
  CHECK(r.reason.find("self-adjoint") != std::string::npos);
}

TEST_CASE("gradient bound lemma") {
  GridPtr box = make_grid(1, 100.0, 8192);

  // harmonic: |grad V|^2 = 2 sup|hess| V exactly, ratio 1 everywhere
  LemmaReport h = grad_bound_lemma_check(Potential::harmonic(1.0), *box);
  CHECK(h.pass);
  CHECK(h.max_ratio == doctest::Approx(1.0).epsilon(1e-9));

  // soft linear: max of x^2/(2 <x>^3) is 1/(3 sqrt(3)) at x = +-sqrt(2)
  LemmaReport s = grad_bound_lemma_check(Potential::soft_linear(), *box);
  CHECK(s.pass);
  CHECK(s.max_ratio == doctest::Approx(1.0 / (3 * std::sqrt(3.0))).epsilon(1e-3));

  LemmaReport z = grad_bound_lemma_check(Potential::zero(), *box);
  CHECK(z.pass);
  CHECK(z.max_ratio == doctest::Approx(0.0));

  // (x+1)^2/2 touches zero: ratio 1 everywhere away from the root
  LemmaReport a = grad_bound_lemma_check(
      Potential::anisotropic_quadratic(1, {1, 0, 0, 0}, {1, 0}, 0.5), *box);
  CHECK(a.pass);
  CHECK(a.max_ratio == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(grad_bound_lemma_check(Potential::stark(1.0), *box),
                  std::invalid_argument);
  CHECK_THROWS_AS(grad_bound_lemma_check(Potential::soft_power(3.0), *box),
                  std::invalid_argument);
}

TEST_CASE("equality and description") {
  CHECK(Potential::harmonic(1.0) == Potential::harmonic(1.0));
  CHECK(Potential::harmonic(1.0) != Potential::harmonic(2.0));
  CHECK(Potential::zero() != Potential::stark(0.0));
  CHECK_FALSE(Potential::soft_power(3.0).describe().empty());
  CHECK(Potential::harmonic(2.0).describe() !=
        Potential::inverted_harmonic(2.0).describe());
}

TEST_CASE("declared dimension is enforced") {
  std::array<double, 2> om = {1.0, 2.0};
  Potential p2 = Potential::harmonic(std::span<const double>(om));
  CHECK(p2.declared_dim() == 2);
  CHECK(Potential::harmonic(1.0).declared_dim() == 0);
  double x = 1.0;
  CHECK_THROWS_AS(p2.value({&x, 1}), std::invalid_argument);
}

TEST_CASE("factory validation") {
  CHECK_THROWS_AS(Potential::soft_power(2.0), std::invalid_argument);
  CHECK_THROWS_AS(Potential::soft_power(1.5), std::invalid_argument);
  CHECK_THROWS_AS(Potential::inverted_harmonic(0.0), std::invalid_argument);
}
