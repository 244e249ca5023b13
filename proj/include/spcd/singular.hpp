#pragma once

#include <array>
#include <functional>

#include "spcd/problem.hpp"

namespace spcd {

/// Complementary error function, relative error below 1e-13 wherever the
/// result exceeds 1e-300. Values smaller than e^{-700} flush to zero.
/// Throws std::domain_error for non-finite arguments.
double erfc(double z);

/// The erfc-based singular family psi_0..psi_4 and the subtracted parts.
///
/// psi_0(x,t) = erfc((d(t)-x) / (2 sqrt(eps t)))
/// psi_1      = (d(t)-x) psi_0 - 2 sqrt(eps t / pi) E
/// psi_i      = (d(t)-x) psi_{i-1} + 2 eps t (i-1) psi_{i-2},  i = 2,3,4
/// E(x,t)     = exp(-(x-d(t))^2 / (4 eps t))
///
/// At t = 0 the pointwise limits are used: psi_0 = 0 / 1 / 2 for x below /
/// at / above d, psi_1 = 2(d-x) for x > d and 0 otherwise, higher orders
/// from the recursion with t = 0.
class SingularBasis {
 public:
  SingularBasis(const ProblemSpec& problem, CharacteristicCurve curve);

  /// Direct construction from parts (mainly for tests). The reaction
  /// integral B(t) = int_0^t b may be omitted for b = 0.
  SingularBasis(double eps, CharacteristicCurve curve,
                std::array<double, 5> jumps);
  SingularBasis(double eps, CharacteristicCurve curve,
                std::array<double, 5> jumps, CumulativeIntegral b_integral);

  double eps() const { return eps_; }
  const CharacteristicCurve& curve() const { return curve_; }
  double jump(int i) const;

  /// E(x,t); 1 at t = 0 on the curve, 0 off it.
  double gaussian(double x, double t) const;

  /// psi_i(x, t) for i in 0..4; throws std::domain_error for i outside the
  /// range or (x,t) outside [0,1] x [0,T].
  double psi(int i, double x, double t) const;

  /// All five psi values at once (they share erfc and E).
  std::array<double, 5> psi_all(double x, double t) const;

  /// exp(-B(t)) with B(t) = int_0^t b; identically 1 when b = 0.
  double damping(double t) const;

  /// Level 0: 0.5 [phi](d) e^{-B(t)} psi_0(x,t).
  /// Level 1: level 0 minus 0.5 [phi'](d) e^{-B(t)} psi_1(x,t).
  double singular_part(double x, double t, int level) const;

  /// Spatial derivative of singular_part, from the closed forms
  /// d psi_0/dx = E / sqrt(pi eps t) and d psi_1/dx = -psi_0. Needed by the
  /// space-dependent-convection demo, where the remainder problem keeps the
  /// residual source (a(x,t) - d'(t)) dS/dx. Requires t > 0.
  double singular_part_dx(double x, double t, int level) const;

 private:
  double eps_;
  CharacteristicCurve curve_;
  std::array<double, 5> jumps_;
  CumulativeIntegral b_integral_;
  bool has_b_ = false;
};

/// Initial and boundary data of the remainder problem y = u - S_part.
struct RemainderData {
  std::function<double(double)> initial;  // y(x, 0) on [0, 1]
  ScalarField1 left;                      // y(0, t)
  ScalarField1 right;                     // y(1, t)
  int level = 0;
};

/// Transformed data for the remainder problem at subtraction level 0 or 1.
/// The basis must have been built from the same problem.
RemainderData remainder_data(const ProblemSpec& problem,
                             const SingularBasis& basis, int level);

/// Finite-difference residual -eps D2x psi_i + a(t) Dx psi_i + Dt psi_i
/// using 4th-order central stencils of step h; a validation oracle for
/// L psi_i = 0. Throws std::domain_error when the stencil leaves the domain
/// (x +- 2h outside [0,1] or t - 2h <= 0 or t + 2h > T).
double psi_residual(const SingularBasis& basis, int i, double x, double t,
                    double h);

}  // namespace spcd
