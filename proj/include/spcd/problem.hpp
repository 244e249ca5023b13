#pragma once

#include <array>
#include <functional>
#include <optional>

#include "spcd/quadrature.hpp"

namespace spcd {

/// Scalar coefficient of one variable, e.g. a(t), b(t) or boundary data.
using ScalarField1 = std::function<double(double)>;
/// Scalar field on the space-time domain, e.g. a source term f(x,t).
using ScalarField2 = std::function<double(double, double)>;

/// Two-piece initial condition with a genuine discontinuity at x = d.
///
/// Each piece supplies derivative evaluators of orders 0..4, total on [0,1];
/// the jumps [phi^(i)](d) feed the singular expansion, so no numeric
/// differentiation is ever applied to user data.
class InitialCondition {
 public:
  using Piece = std::array<std::function<double(double)>, 5>;

  /// Throws std::invalid_argument unless 0 < d < 1 and, by default,
  /// unless the order-0 jump is nonzero. `allow_zero_jump` opts in to the
  /// degenerate continuous case (used by tests that exercise the scheme
  /// without any subtraction).
  InitialCondition(Piece left, Piece right, double d,
                   bool allow_zero_jump = false);

  double discontinuity() const { return d_; }

  /// phi^(order) evaluated with the left (resp. right) piece.
  double left(int order, double x) const;
  double right(int order, double x) const;

  /// [phi^(order)](d) = right(order, d) - left(order, d).
  /// Throws std::domain_error for order outside 0..4.
  double jump(int order) const;

  const std::array<double, 5>& jumps() const { return jumps_; }

 private:
  Piece left_;
  Piece right_;
  double d_;
  std::array<double, 5> jumps_;
};

/// Continuous problem data:
///   -eps u_xx + a(t) u_x + b(t) u + u_t = f(x,t)  on (0,1) x (0,T],
/// with u(x,0) given by a discontinuous two-piece initial condition and
/// u(0,t) = g0(t), u(1,t) = g1(t).
class ProblemSpec {
 public:
  struct Data {
    ScalarField1 a;                 // convection, a(t) >= alpha > 0
    ScalarField1 b;                 // reaction, b(t) >= 0; empty means 0
    ScalarField2 f;                 // source; empty means 0
    InitialCondition ic;
    ScalarField1 g0;                // left boundary data
    ScalarField1 g1;                // right boundary data
    double eps = 1.0;               // perturbation parameter, in (0,1]
    double alpha = 1.0;             // convection lower bound
    double T = 1.0;                 // final time
    ScalarField1 a_antiderivative;  // optional closed form of int_0^t a
  };

  /// Validates alpha > 0, T > 0, eps in (0,1], a(t) >= alpha and b(t) >= 0
  /// by sampling 10^4 equispaced times; a violation throws
  /// std::invalid_argument.
  explicit ProblemSpec(Data data);

  const ScalarField1& a() const { return data_.a; }
  bool has_b() const { return static_cast<bool>(data_.b); }
  double b(double t) const { return data_.b ? data_.b(t) : 0.0; }
  bool has_f() const { return static_cast<bool>(data_.f); }
  double f(double x, double t) const { return data_.f ? data_.f(x, t) : 0.0; }
  const ScalarField1& b_field() const { return data_.b; }
  const ScalarField2& f_field() const { return data_.f; }
  const InitialCondition& ic() const { return data_.ic; }
  double g0(double t) const { return data_.g0 ? data_.g0(t) : 0.0; }
  double g1(double t) const { return data_.g1 ? data_.g1(t) : 0.0; }
  const ScalarField1& g0_field() const { return data_.g0; }
  const ScalarField1& g1_field() const { return data_.g1; }
  double eps() const { return data_.eps; }
  double alpha() const { return data_.alpha; }
  double final_time() const { return data_.T; }
  const ScalarField1& a_antiderivative() const {
    return data_.a_antiderivative;
  }

 private:
  Data data_;
};

/// The characteristic curve d(t) = d + int_0^t a(s) ds along which the
/// discontinuity is convected. Immutable; safe for concurrent reads.
class CharacteristicCurve {
 public:
  /// Quadrature-backed antiderivative cache.
  CharacteristicCurve(ScalarField1 a, double d, double T);
  /// With analytic antiderivative A(t) = int_0^t a (A(0) = 0); exact.
  CharacteristicCurve(ScalarField1 a, double d, double T,
                      ScalarField1 analytic_antiderivative);

  double initial_position() const { return d_; }
  double final_time() const { return T_; }
  const ScalarField1& coefficient() const { return a_; }

  /// int_0^t a(s) ds. Throws std::domain_error for t outside [0, T].
  double cumulative(double t) const;

  /// d(t) = d + cumulative(t).
  double position(double t) const;

  /// The crossing time T* in (0, T) with d(T*) = 1, located by bisection to
  /// absolute tolerance 1e-12. Absent when d(T) <= 1 (a crossing exactly at
  /// the endpoint does not count as interior).
  std::optional<double> crossing_time() const;

 private:
  ScalarField1 a_;
  double d_;
  double T_;
  CumulativeIntegral antiderivative_;
};

/// Builds the curve for a problem, using the closed-form antiderivative
/// when the spec provides one.
CharacteristicCurve make_curve(const ProblemSpec& problem);

}  // namespace spcd
