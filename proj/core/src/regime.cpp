#include "nls/regime.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nls {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

const char* to_string(TheoremTag t) {
  switch (t) {
    case TheoremTag::None: return "none";
    case TheoremTag::SqrtHTheory: return "sqrt_H";
    case TheoremTag::SigmaTheory: return "sigma";
    case TheoremTag::SigmaTildeTheory: return "sigma_tilde";
    case TheoremTag::BsAlgebraTheory: return "bs_algebra";
    case TheoremTag::BsStrichartzTheory: return "bs_strichartz";
    case TheoremTag::BsGlobalTheory: return "bs_global_window";
  }
  return "?";
}

const char* to_string(GlobalTag g) {
  switch (g) {
    case GlobalTag::Global: return "global";
    case GlobalTag::LocalOnly: return "local_only";
    case GlobalTag::PossibleBlowup: return "possible_blowup";
  }
  return "?";
}

std::string to_string(SpaceTag s, double bs_order) {
  switch (s) {
    case SpaceTag::H1: return "H1";
    case SpaceTag::SigmaTilde: return "SigmaTilde";
    case SpaceTag::Sigma: return "Sigma";
    case SpaceTag::Bs: return "B^" + std::to_string(bs_order);
  }
  return "?";
}

std::string describe(const RegimeVerdict& v) {
  std::string out = "theorem=";
  out += to_string(v.applicable_theorem);
  out += " space=" + to_string(v.required_space, v.bs_order);
  out += " global=";
  out += to_string(v.global);
  out += " two_over_d=" + std::to_string(v.two_over_d);
  out += " super_quadratic_bound=";
  out += v.super_quadratic_bound == kInf
             ? "inf"
             : std::to_string(v.super_quadratic_bound);
  if (v.exponent_order_inverted) out += " exponent_order_inverted";
  return out;
}

RegimeVerdict regime(int d, double sigma, double lambda,
                     const PotentialClass& cls) {
  if (d < 1) throw std::invalid_argument("regime: d must be >= 1");
  if (!(sigma > 0)) throw std::invalid_argument("regime: sigma must be > 0");
  if (d >= 3 && sigma >= 2.0 / (d - 2))
    throw std::invalid_argument(
        "regime: energy-supercritical sigma >= 2/(d-2)");

  RegimeVerdict v;
  v.two_over_d = 2.0 / d;
  double m = cls.growth;
  v.super_quadratic_bound = d <= 2 ? kInf : (m + 2) / (m * (d - 2));
  v.exponent_order_inverted = v.super_quadratic_bound < v.two_over_d;

  bool subcritical = sigma < v.two_over_d;
  bool defocusing_ok = sigma >= v.two_over_d && lambda >= 0;

  if (cls.kind == PotentialClass::Kind::AtMostQuadratic) {
    // The weight |grad V| is the sharp one: bounded grad V needs only H1,
    // unbounded grad V needs the SigmaTilde weight.
    v.applicable_theorem = TheoremTag::SigmaTildeTheory;
    v.required_space =
        cls.grad_bounded ? SpaceTag::H1 : SpaceTag::SigmaTilde;
    v.global = (subcritical || defocusing_ok) ? GlobalTag::Global
                                              : GlobalTag::PossibleBlowup;
    return v;
  }

  // Super-quadratic growth: B^s data with the dispersive-estimate exponent.
  v.required_space = SpaceTag::Bs;
  v.bs_order = std::max(1.0, 0.5 * d - (0.5 + 1.0 / m) / sigma);
  bool in_window = defocusing_ok && sigma < v.super_quadratic_bound;
  if (d <= 3 && (subcritical || in_window)) {
    v.applicable_theorem = TheoremTag::BsGlobalTheory;
    v.global = GlobalTag::Global;
    return v;
  }
  v.applicable_theorem = v.bs_order > 0.5 * d
                             ? TheoremTag::BsAlgebraTheory
                             : TheoremTag::BsStrichartzTheory;
  v.global = (sigma >= v.two_over_d && lambda < 0) ? GlobalTag::PossibleBlowup
                                                   : GlobalTag::LocalOnly;
  return v;
}

}  // namespace nls
