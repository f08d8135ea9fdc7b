#pragma once

#include <array>
#include <span>
#include <string>

#include "nls/grid.hpp"

namespace nls {

enum class PotentialFamily {
  Zero,
  Harmonic,
  InvertedHarmonic,
  Stark,
  SoftLinear,
  AnisotropicQuadratic,
  SoftPower,
};

// Pointwise data of V at a point x, all from closed forms (no differencing).
// Arrays are sized for dim <= 2; unused entries stay zero. hess is row-major.
struct PotentialEval {
  double value = 0;
  std::array<double, 2> grad{};
  std::array<double, 4> hess{};
  std::array<double, 2> grad_lap{};  // gradient of the Laplacian of V
};

struct PotentialClass {
  enum class Kind { AtMostQuadratic, SuperQuadratic };
  Kind kind = Kind::AtMostQuadratic;
  double growth = 2.0;        // m for SuperQuadratic, 2 otherwise
  bool grad_bounded = false;  // sup |grad V| finite
  bool operator==(const PotentialClass&) const = default;
};

struct GuardResult {
  bool accepted = false;
  std::string reason;
};

struct LemmaReport {
  // max over sampled points of |grad V|^2 / (2 sup|hess V| * V),
  // skipping points with V < 1e-12.
  double max_ratio = 0;
  bool pass = false;  // max_ratio <= 1 + 1e-9
};

// Smooth potential from a small closed catalog. All derivatives up to third
// order come from per-family closed forms, and the growth class, sign, and
// Hessian bound are analytic per family rather than sampled.
class Potential {
 public:
  static Potential zero();
  // V = 1/2 sum_i omega_i^2 x_i^2, omega_i >= 0 (one entry per axis).
  static Potential harmonic(std::span<const double> omega);
  static Potential harmonic(double omega);  // isotropic, any dim
  // V = -1/2 omega^2 |x|^2, omega > 0.
  static Potential inverted_harmonic(double omega);
  // V = field . x (uniform force).
  static Potential stark(std::span<const double> field);
  static Potential stark(double field);  // 1D
  // V = <x> = sqrt(1 + |x|^2).
  static Potential soft_linear();
  // V = 1/2 x^T A x + b.x + c with A symmetric; dim in {1,2}.
  static Potential anisotropic_quadratic(int dim, std::array<double, 4> A,
                                         std::array<double, 2> b, double c);
  // V = <x>^m with m > 2 (super-quadratic growth).
  static Potential soft_power(double m);
  // V = -<x>^m; exists to demonstrate guard rejection.
  static Potential negated_soft_power(double m);

  PotentialFamily family() const { return family_; }
  // 0 means the formula is dimension-agnostic; otherwise eval points must
  // have exactly this many coordinates.
  int declared_dim() const { return dim_; }

  PotentialEval eval(std::span<const double> x) const;
  double value(std::span<const double> x) const;

  PotentialClass classify() const;
  bool sign_flag() const;           // V >= 0 everywhere
  bool grad_bounded() const;        // sup |grad V| finite
  double hessian_sup_norm() const;  // sup_x |hess V(x)|, +inf for SoftPower
  double grad_at_origin() const;    // |grad V(0)|

  // Accepts exactly the potentials bounded below by some -a|x|^2 - b, the
  // condition under which the Hamiltonian is essentially self-adjoint.
  GuardResult self_adjointness_guard() const;

  std::string describe() const;

  bool operator==(const Potential&) const = default;

 private:
  Potential() = default;

  PotentialFamily family_ = PotentialFamily::Zero;
  int dim_ = 0;
  std::array<double, 2> omega_{};
  std::array<double, 2> field_{};
  std::array<double, 4> A_{};
  std::array<double, 2> b_{};
  double c_ = 0;
  double m_ = 0;
  bool negated_ = false;
};

// Checks the pointwise bound |grad V|^2 <= 2 sup|hess V| * V over the sample
// box for nonnegative at-most-quadratic potentials; the bound is what makes
// the |grad V| weight controllable by sqrt(V).
LemmaReport grad_bound_lemma_check(const Potential& p, const Grid& sample_box);

}  // namespace nls
