#include "nls/potential.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nls {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(std::span<const double> a) { return dot(a, a); }

// Eigenvalues of a symmetric matrix stored row-major, dim 1 or 2.
std::array<double, 2> sym_eigenvalues(const std::array<double, 4>& A, int dim) {
  if (dim == 1) return {A[0], 0.0};
  double tr = A[0] + A[3];
  double det = A[0] * A[3] - A[1] * A[2];
  double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  return {tr / 2.0 - disc, tr / 2.0 + disc};
}

}  // namespace

Potential Potential::zero() { return Potential(); }

Potential Potential::harmonic(std::span<const double> omega) {
  if (omega.empty() || omega.size() > 2)
    throw std::invalid_argument("harmonic: need 1 or 2 frequencies");
  Potential p;
  p.family_ = PotentialFamily::Harmonic;
  p.dim_ = static_cast<int>(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (!(omega[i] >= 0))
      throw std::invalid_argument("harmonic: frequencies must be >= 0");
    p.omega_[i] = omega[i];
  }
  return p;
}

Potential Potential::harmonic(double omega) {
  if (!(omega >= 0))
    throw std::invalid_argument("harmonic: frequency must be >= 0");
  Potential p;
  p.family_ = PotentialFamily::Harmonic;
  p.dim_ = 0;  // isotropic, any dim
  p.omega_ = {omega, omega};
  return p;
}

Potential Potential::inverted_harmonic(double omega) {
  if (!(omega > 0))
    throw std::invalid_argument("inverted_harmonic: frequency must be > 0");
  Potential p;
  p.family_ = PotentialFamily::InvertedHarmonic;
  p.omega_ = {omega, omega};
  return p;
}

Potential Potential::stark(std::span<const double> field) {
  if (field.empty() || field.size() > 2)
    throw std::invalid_argument("stark: need 1 or 2 field components");
  Potential p;
  p.family_ = PotentialFamily::Stark;
  p.dim_ = static_cast<int>(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) p.field_[i] = field[i];
  return p;
}

Potential Potential::stark(double field) {
  const double f[1] = {field};
  return stark(std::span<const double>(f, 1));
}

Potential Potential::soft_linear() {
  Potential p;
  p.family_ = PotentialFamily::SoftLinear;
  return p;
}

Potential Potential::anisotropic_quadratic(int dim, std::array<double, 4> A,
                                           std::array<double, 2> b, double c) {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("anisotropic_quadratic: dim must be 1 or 2");
  if (dim == 2 && A[1] != A[2])
    throw std::invalid_argument("anisotropic_quadratic: A must be symmetric");
  Potential p;
  p.family_ = PotentialFamily::AnisotropicQuadratic;
  p.dim_ = dim;
  p.A_ = A;
  p.b_ = b;
  p.c_ = c;
  return p;
}

Potential Potential::soft_power(double m) {
  if (!(m > 2)) throw std::invalid_argument("soft_power: need m > 2");
  Potential p;
  p.family_ = PotentialFamily::SoftPower;
  p.m_ = m;
  return p;
}

Potential Potential::negated_soft_power(double m) {
  Potential p = soft_power(m);
  p.negated_ = true;
  return p;
}

PotentialEval Potential::eval(std::span<const double> x) const {
  const int d = static_cast<int>(x.size());
  if (d < 1 || d > 2)
    throw std::invalid_argument("eval: point must have 1 or 2 coordinates");
  if (dim_ != 0 && dim_ != d)
    throw std::invalid_argument("eval: point dim does not match potential");

  PotentialEval e;
  switch (family_) {
    case PotentialFamily::Zero:
      break;

    case PotentialFamily::Harmonic:
      for (int i = 0; i < d; ++i) {
        double w2 = omega_[i] * omega_[i];
        e.value += 0.5 * w2 * x[i] * x[i];
        e.grad[i] = w2 * x[i];
        e.hess[i * d + i] = w2;
      }
      break;

    case PotentialFamily::InvertedHarmonic: {
      double w2 = omega_[0] * omega_[0];
      e.value = -0.5 * w2 * norm_sq(x);
      for (int i = 0; i < d; ++i) {
        e.grad[i] = -w2 * x[i];
        e.hess[i * d + i] = -w2;
      }
      break;
    }

    case PotentialFamily::Stark:
      e.value = dot(std::span<const double>(field_.data(), d), x);
      for (int i = 0; i < d; ++i) e.grad[i] = field_[i];
      break;

    case PotentialFamily::SoftLinear: {
      // V = <x>, grad = x/<x>, hess = I/<x> - x x^T/<x>^3,
      // grad(lap V) = -x ((d+2) + (d-1)|x|^2) / <x>^5.
      double r2 = norm_sq(x);
      double w = std::sqrt(1.0 + r2);
      e.value = w;
      double w3 = w * w * w;
      double w5 = w3 * w * w;
      for (int i = 0; i < d; ++i) {
        e.grad[i] = x[i] / w;
        for (int j = 0; j < d; ++j)
          e.hess[i * d + j] = (i == j ? 1.0 / w : 0.0) - x[i] * x[j] / w3;
        e.grad_lap[i] = -x[i] * ((d + 2) + (d - 1) * r2) / w5;
      }
      break;
    }

    case PotentialFamily::AnisotropicQuadratic: {
      double Ax[2] = {0, 0};
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) Ax[i] += A_[i * 2 + j] * x[j];
      e.value = 0.5 * dot(std::span<const double>(Ax, d), x) +
                dot(std::span<const double>(b_.data(), d), x) + c_;
      for (int i = 0; i < d; ++i) {
        e.grad[i] = Ax[i] + b_[i];
        for (int j = 0; j < d; ++j) e.hess[i * d + j] = A_[i * 2 + j];
      }
      break;
    }

    case PotentialFamily::SoftPower: {
      // V = s <x>^m, grad = s m x <x>^{m-2},
      // hess = s (m I <x>^{m-2} + m(m-2) x x^T <x>^{m-4}),
      // grad(lap V) = s m(m-2) x <x>^{m-6} ((d+2) + (d+m-2)|x|^2).
      double s = negated_ ? -1.0 : 1.0;
      double r2 = norm_sq(x);
      double w2 = 1.0 + r2;
      double w = std::sqrt(w2);
      double wm = std::pow(w, m_);
      double wm2 = wm / w2;        // <x>^{m-2}
      double wm4 = wm2 / w2;       // <x>^{m-4}
      double wm6 = wm4 / w2;       // <x>^{m-6}
      e.value = s * wm;
      for (int i = 0; i < d; ++i) {
        e.grad[i] = s * m_ * x[i] * wm2;
        for (int j = 0; j < d; ++j)
          e.hess[i * d + j] = s * (m_ * (i == j ? wm2 : 0.0) +
                                   m_ * (m_ - 2) * x[i] * x[j] * wm4);
        e.grad_lap[i] =
            s * m_ * (m_ - 2) * x[i] * wm6 * ((d + 2) + (d + m_ - 2) * r2);
      }
      break;
    }
  }
  return e;
}

double Potential::value(std::span<const double> x) const {
  return eval(x).value;
}

PotentialClass Potential::classify() const {
  if (family_ == PotentialFamily::SoftPower)
    return {PotentialClass::Kind::SuperQuadratic, m_, false};
  return {PotentialClass::Kind::AtMostQuadratic, 2.0, grad_bounded()};
}

bool Potential::sign_flag() const {
  switch (family_) {
    case PotentialFamily::Zero:
    case PotentialFamily::Harmonic:
    case PotentialFamily::SoftLinear:
      return true;
    case PotentialFamily::InvertedHarmonic:
      return false;
    case PotentialFamily::Stark:
      return field_[0] == 0 && field_[1] == 0;
    case PotentialFamily::SoftPower:
      return !negated_;
    case PotentialFamily::AnisotropicQuadratic: {
      // V >= 0 iff A is positive semidefinite, b lies in range(A), and the
      // minimum c - 1/2 b^T A^+ b is nonnegative.
      auto eig = sym_eigenvalues(A_, dim_);
      double scale = std::max({std::abs(eig[0]), std::abs(eig[1]), 1.0});
      double tol = 1e-12 * scale;
      if (eig[0] < -tol) return false;
      double min_value = c_;
      if (dim_ == 1) {
        if (A_[0] > tol) {
          min_value -= 0.5 * b_[0] * b_[0] / A_[0];
        } else if (b_[0] != 0) {
          return false;
        }
      } else {
        // Project b onto the eigenbasis of A.
        double lo = eig[0], hi = eig[1];
        double vx, vy;  // eigenvector for lo
        if (std::abs(A_[1]) > tol) {
          vx = lo - A_[3];
          vy = A_[1];
        } else if (A_[0] <= A_[3]) {
          vx = 1;
          vy = 0;
        } else {
          vx = 0;
          vy = 1;
        }
        double nv = std::hypot(vx, vy);
        vx /= nv;
        vy /= nv;
        double b_lo = b_[0] * vx + b_[1] * vy;
        double b_hi = -b_[0] * vy + b_[1] * vx;
        for (auto [lam, bc] : {std::pair{lo, b_lo}, std::pair{hi, b_hi}}) {
          if (lam > tol) {
            min_value -= 0.5 * bc * bc / lam;
          } else if (std::abs(bc) > tol) {
            return false;
          }
        }
      }
      return min_value >= -1e-12;
    }
  }
  return false;
}

bool Potential::grad_bounded() const {
  switch (family_) {
    case PotentialFamily::Zero:
    case PotentialFamily::Stark:
    case PotentialFamily::SoftLinear:
      return true;
    case PotentialFamily::Harmonic:
      return omega_[0] == 0 && omega_[1] == 0;
    case PotentialFamily::InvertedHarmonic:
    case PotentialFamily::SoftPower:
      return false;
    case PotentialFamily::AnisotropicQuadratic:
      return A_[0] == 0 && A_[1] == 0 && A_[2] == 0 && A_[3] == 0;
  }
  return false;
}

double Potential::hessian_sup_norm() const {
  switch (family_) {
    case PotentialFamily::Zero:
    case PotentialFamily::Stark:
      return 0;
    case PotentialFamily::Harmonic:
      return std::max(omega_[0] * omega_[0], omega_[1] * omega_[1]);
    case PotentialFamily::InvertedHarmonic:
      return omega_[0] * omega_[0];
    case PotentialFamily::SoftLinear:
      return 1.0;  // eigenvalues 1/<x> and 1/<x>^3, maximal at the origin
    case PotentialFamily::AnisotropicQuadratic: {
      auto eig = sym_eigenvalues(A_, dim_ == 0 ? 2 : dim_);
      return std::max(std::abs(eig[0]), std::abs(eig[1]));
    }
    case PotentialFamily::SoftPower:
      return kInf;
  }
  return 0;
}

double Potential::grad_at_origin() const {
  switch (family_) {
    case PotentialFamily::Stark:
      return std::sqrt(field_[0] * field_[0] + field_[1] * field_[1]);
    case PotentialFamily::AnisotropicQuadratic:
      return std::sqrt(b_[0] * b_[0] + b_[1] * b_[1]);
    default:
      return 0;
  }
}

GuardResult Potential::self_adjointness_guard() const {
  if (family_ == PotentialFamily::SoftPower && negated_) {
    std::ostringstream os;
    os << "rejected: V = -<x>^" << m_
       << " falls below every -a|x|^2 - b; the Hamiltonian is not "
          "essentially self-adjoint";
    return {false, os.str()};
  }
  return {true, "bounded below by a quadratic"};
}

std::string Potential::describe() const {
  std::ostringstream os;
  switch (family_) {
    case PotentialFamily::Zero:
      os << "zero";
      break;
    case PotentialFamily::Harmonic:
      os << "harmonic(omega=" << omega_[0];
      if (dim_ == 2) os << "," << omega_[1];
      os << ")";
      break;
    case PotentialFamily::InvertedHarmonic:
      os << "inverted_harmonic(omega=" << omega_[0] << ")";
      break;
    case PotentialFamily::Stark:
      os << "stark(field=" << field_[0];
      if (dim_ == 2) os << "," << field_[1];
      os << ")";
      break;
    case PotentialFamily::SoftLinear:
      os << "soft_linear";
      break;
    case PotentialFamily::AnisotropicQuadratic:
      os << "anisotropic_quadratic(A=[" << A_[0];
      if (dim_ == 2) os << "," << A_[1] << ";" << A_[2] << "," << A_[3];
      os << "], b=[" << b_[0];
      if (dim_ == 2) os << "," << b_[1];
      os << "], c=" << c_ << ")";
      break;
    case PotentialFamily::SoftPower:
      os << (negated_ ? "negated_soft_power(m=" : "soft_power(m=") << m_
         << ")";
      break;
  }
  return os.str();
}

LemmaReport grad_bound_lemma_check(const Potential& p, const Grid& sample_box) {
  if (p.classify().kind != PotentialClass::Kind::AtMostQuadratic)
    throw std::invalid_argument(
        "grad_bound_lemma_check: potential must be at most quadratic");
  if (!p.sign_flag())
    throw std::invalid_argument(
        "grad_bound_lemma_check: potential must be nonnegative");

  const double hbound = p.hessian_sup_norm();
  LemmaReport rep;
  double pt[2];
  for (std::size_t i = 0; i < sample_box.size(); ++i) {
    sample_box.point(i, pt);
    PotentialEval e = p.eval(std::span<const double>(pt, sample_box.dim()));
    if (e.value < 1e-12) continue;
    double gsq = e.grad[0] * e.grad[0] + e.grad[1] * e.grad[1];
    double ratio;
    if (gsq == 0) {
      ratio = 0;
    } else if (hbound == 0) {
      ratio = kInf;  // flat Hessian but nonzero slope: bound cannot hold
    } else {
      ratio = gsq / (2.0 * hbound * e.value);
    }
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  rep.pass = rep.max_ratio <= 1.0 + 1e-9;
  return rep;
}

}  // namespace nls
