#pragma once

#include <string>

#include "nls/potential.hpp"

namespace nls {

// Which piece of the well-posedness theory grants (at least local)
// existence for the given regime. Named by content: the space the data
// lives in and the mechanism of the proof.
enum class TheoremTag {
  None,                // nothing applies
  SqrtHTheory,         // V >= 0 at most quadratic, data in B^1 = sqrt(H)
  SigmaTheory,         // at most quadratic, data in Sigma
  SigmaTildeTheory,    // at most quadratic, data in SigmaTilde (sharp weight)
  BsAlgebraTheory,     // super-quadratic, B^s with s > d/2 (algebra)
  BsStrichartzTheory,  // super-quadratic, B^s via dispersive bounds
  BsGlobalTheory,      // super-quadratic global window, d <= 3, s >= 1
};

enum class SpaceTag { H1, SigmaTilde, Sigma, Bs };

enum class GlobalTag { Global, LocalOnly, PossibleBlowup };

struct RegimeVerdict {
  TheoremTag applicable_theorem = TheoremTag::None;
  SpaceTag required_space = SpaceTag::H1;
  double bs_order = 0;  // s when required_space == Bs, otherwise 0
  GlobalTag global = GlobalTag::LocalOnly;
  // Critical exponents, always reported.
  double two_over_d = 0;
  double super_quadratic_bound = 0;  // (m+2)/(m(d-2)+), +inf when d <= 2
  // d >= 5 can invert the usual order of the two exponents; flagged,
  // no conclusion drawn from it.
  bool exponent_order_inverted = false;

  bool operator==(const RegimeVerdict&) const = default;
};

const char* to_string(TheoremTag t);
const char* to_string(GlobalTag g);
std::string to_string(SpaceTag s, double bs_order);
std::string describe(const RegimeVerdict& v);

// Pure classification of (dimension, nonlinearity, potential growth class).
// Requires d >= 1, sigma > 0 and, for d >= 3, the energy-subcritical range
// sigma < 2/(d-2); throws std::invalid_argument otherwise. Scaling lambda
// by a positive factor never changes the verdict; only its sign enters.
RegimeVerdict regime(int d, double sigma, double lambda,
                     const PotentialClass& cls);

}  // namespace nls
