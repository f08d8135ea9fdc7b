#include <cmath>
#include <stdexcept>
#include <string>

#include <doctest.h>

#include "nls/regime.hpp"

using namespace nls;

namespace {

PotentialClass amq(bool grad_bounded) {
  PotentialClass c;
  c.kind = PotentialClass::Kind::AtMostQuadratic;
  c.growth = 2.0;
  c.grad_bounded = grad_bounded;
  return c;
}

PotentialClass sq(double m) {
  PotentialClass c;
  c.kind = PotentialClass::Kind::SuperQuadratic;
  c.growth = m;
  c.grad_bounded = false;
  return c;
}

}  // namespace

TEST_CASE("regime table") {
  // Twelve pinned cases spanning both growth classes, both signs of lambda,
  // sub/critical/supercritical powers and d = 1..5.
  struct Case {
    int d;
    double sigma, lambda;
    PotentialClass cls;
    RegimeVerdict want;
  };
  auto inf = std::numeric_limits<double>::infinity();
  std::vector<Case> table;

  // 1: cubic focusing in 1D under the trap, mass-subcritical: global in
  // SigmaTilde, the sharp weight for an unbounded-force quadratic potential.
  table.push_back({1, 0.5, -1.0, amq(false),
                   {TheoremTag::SigmaTildeTheory, SpaceTag::SigmaTilde, 0,
                    GlobalTag::Global, 2.0, inf, false}});
  // 2: 2D cubic focusing at the mass-critical power: blowup possible.
  table.push_back({2, 1.0, -1.0, amq(false),
                   {TheoremTag::SigmaTildeTheory, SpaceTag::SigmaTilde, 0,
                    GlobalTag::PossibleBlowup, 1.0, inf, false}});
  // 3: 3D defocusing in the super-quadratic global window, m = 3.
  table.push_back({3, 1.5, 1.0, sq(3.0),
                   {TheoremTag::BsGlobalTheory, SpaceTag::Bs, 1.0,
                    GlobalTag::Global, 2.0 / 3.0, 5.0 / 3.0, false}});
  // 4: 1D quintic focusing, mass-critical: blowup possible.
  table.push_back({1, 2.0, -1.0, amq(false),
                   {TheoremTag::SigmaTildeTheory, SpaceTag::SigmaTilde, 0,
                    GlobalTag::PossibleBlowup, 2.0, inf, false}});
  // 5: same power defocusing: global.
  table.push_back({1, 2.0, 1.0, amq(false),
                   {TheoremTag::SigmaTildeTheory, SpaceTag::SigmaTilde, 0,
                    GlobalTag::Global, 2.0, inf, false}});
  // 6: bounded force (uniform field, say): plain H1 suffices.
  table.push_back({1, 1.0, -1.0, amq(true),
                   {TheoremTag::SigmaTildeTheory, SpaceTag::H1, 0,
                    GlobalTag::Global, 2.0, inf, false}});
  // 7: linear equation is globally fine regardless.
  table.push_back({2, 1.0, 0.0, amq(false),
                   {TheoremTag::SigmaTildeTheory, SpaceTag::SigmaTilde, 0,
                    GlobalTag::Global, 1.0, inf, false}});
  // 8: 3D mass-subcritical focusing, super-quadratic: still global.
  table.push_back({3, 0.5, -1.0, sq(3.0),
                   {TheoremTag::BsGlobalTheory, SpaceTag::Bs, 1.0,
                    GlobalTag::Global, 2.0 / 3.0, 5.0 / 3.0, false}});
  // 9: above the window, below energy-critical: local only, s from the
  // dispersive machinery: s = d/2 - (1/2 + 1/m)/sigma = 28/27.
  table.push_back({3, 1.8, 1.0, sq(3.0),
                   {TheoremTag::BsStrichartzTheory, SpaceTag::Bs, 28.0 / 27.0,
                    GlobalTag::LocalOnly, 2.0 / 3.0, 5.0 / 3.0, false}});
  // 10: same spot focusing: blowup possible.
  table.push_back({3, 1.9, -1.0, sq(3.0),
                   {TheoremTag::BsStrichartzTheory, SpaceTag::Bs,
                    1.5 - (0.5 + 1.0 / 3.0) / 1.9, GlobalTag::PossibleBlowup,
                    2.0 / 3.0, 5.0 / 3.0, false}});
  // 11: d = 4, fast-growing potential, small power: s floors at 1.
  table.push_back({4, 0.4, 1.0, sq(10.0),
                   {TheoremTag::BsStrichartzTheory, SpaceTag::Bs, 1.0,
                    GlobalTag::LocalOnly, 0.5, 12.0 / 20.0, false}});
  // 12: d = 5 inverts the order of the two critical exponents.
  table.push_back({5, 0.3, 1.0, sq(11.0),
                   {TheoremTag::BsStrichartzTheory, SpaceTag::Bs, 1.0,
                    GlobalTag::LocalOnly, 0.4, 13.0 / 33.0, true}});

  for (std::size_t i = 0; i < table.size(); ++i) {
    CAPTURE(i);
    const Case& c = table[i];
    RegimeVerdict got = regime(c.d, c.sigma, c.lambda, c.cls);
    CHECK(got.applicable_theorem == c.want.applicable_theorem);
    CHECK(got.required_space == c.want.required_space);
    CHECK(got.bs_order == doctest::Approx(c.want.bs_order).epsilon(1e-12));
    CHECK(got.global == c.want.global);
    CHECK(got.two_over_d == doctest::Approx(c.want.two_over_d).epsilon(1e-12));
    if (std::isinf(c.want.super_quadratic_bound)) {
      CHECK(std::isinf(got.super_quadratic_bound));
    } else {
      CHECK(got.super_quadratic_bound ==
            doctest::Approx(c.want.super_quadratic_bound).epsilon(1e-12));
    }
    CHECK(got.exponent_order_inverted == c.want.exponent_order_inverted);
  }
}

TEST_CASE("only the sign of lambda matters") {
  for (double scale : {0.1, 1.0, 7.5, 1000.0}) {
    CHECK(regime(1, 2.0, -scale, amq(false)) ==
          regime(1, 2.0, -1.0, amq(false)));
    CHECK(regime(3, 1.5, scale, sq(3.0)) == regime(3, 1.5, 1.0, sq(3.0)));
  }
}

TEST_CASE("regime input validation") {
  CHECK_THROWS_AS(regime(0, 1.0, 1.0, amq(false)), std::invalid_argument);
  CHECK_THROWS_AS(regime(1, 0.0, 1.0, amq(false)), std::invalid_argument);
  CHECK_THROWS_AS(regime(1, -1.0, 1.0, amq(false)), std::invalid_argument);
  // energy-supercritical powers are out of scope
  CHECK_THROWS_AS(regime(3, 2.0, 1.0, amq(false)), std::invalid_argument);
  CHECK_THROWS_AS(regime(4, 1.0, 1.0, sq(3.0)), std::invalid_argument);
  // just inside the range is fine
  CHECK_NOTHROW(regime(3, 1.99, 1.0, amq(false)));
}

TEST_CASE("verdict strings") {
  RegimeVerdict v = regime(1, 0.5, -1.0, amq(false));
  std::string d = describe(v);
  CHECK(d.find("sigma_tilde") != std::string::npos);
  CHECK(std::string(to_string(GlobalTag::PossibleBlowup)) == "possible_blowup");
  std::string bs = to_string(SpaceTag::Bs, 1.5);
  CHECK(bs.find("B^") != std::string::npos);

  RegimeVerdict w = regime(3, 1.5, 1.0, sq(3.0));
  std::string dw = describe(w);
  CHECK(dw.find("bs_global_window") != std::string::npos);
}
