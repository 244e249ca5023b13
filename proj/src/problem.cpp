#include "spcd/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace spcd {

InitialCondition::InitialCondition(Piece left, Piece right, double d,
                                   bool allow_zero_jump)
    : left_(std::move(left)), right_(std::move(right)), d_(d) {
  if (!(d > 0.0 && d < 1.0)) {
    throw std::invalid_argument("InitialCondition: d must lie in (0, 1)");
  }
  for (int i = 0; i < 5; ++i) {
    if (!left_[i] || !right_[i]) {
      throw std::invalid_argument(
          "InitialCondition: derivative evaluators of orders 0..4 required");
    }
    jumps_[i] = right_[i](d_) - left_[i](d_);
  }
  if (!allow_zero_jump && jumps_[0] == 0.0) {
    throw std::invalid_argument(
        "InitialCondition: [phi](d) = 0; the initial condition must be "
        "genuinely discontinuous");
  }
}

double InitialCondition::left(int order, double x) const {
  if (order < 0 || order > 4) {
    throw std::domain_error("InitialCondition: order outside 0..4");
  }
  return left_[order](x);
}

double InitialCondition::right(int order, double x) const {
  if (order < 0 || order > 4) {
    throw std::domain_error("InitialCondition: order outside 0..4");
  }
  return right_[order](x);
}

double InitialCondition::jump(int order) const {
  if (order < 0 || order > 4) {
    throw std::domain_error("InitialCondition: order outside 0..4");
  }
  return jumps_[order];
}

ProblemSpec::ProblemSpec(Data data) : data_(std::move(data)) {
  if (!(data_.alpha > 0.0)) {
    throw std::invalid_argument("ProblemSpec: alpha must be positive");
  }
  if (!(data_.T > 0.0)) {
    throw std::invalid_argument("ProblemSpec: T must be positive");
  }
  if (!(data_.eps > 0.0 && data_.eps <= 1.0)) {
    throw std::invalid_argument("ProblemSpec: eps must lie in (0, 1]");
  }
  if (!data_.a) {
    throw std::invalid_argument("ProblemSpec: convection coefficient required");
  }
  constexpr int kSamples = 10000;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = data_.T * (static_cast<double>(i) / kSamples);
    if (!(data_.a(t) >= data_.alpha)) {
      throw std::invalid_argument("ProblemSpec: a(t) < alpha at a sample time");
    }
    if (data_.b && !(data_.b(t) >= 0.0)) {
      throw std::invalid_argument("ProblemSpec: b(t) < 0 at a sample time");
    }
  }
}

CharacteristicCurve::CharacteristicCurve(ScalarField1 a, double d, double T)
    : a_(std::move(a)),
      d_(d),
      T_(T),
      antiderivative_(a_, T) {}

CharacteristicCurve::CharacteristicCurve(ScalarField1 a, double d, double T,
                                         ScalarField1 analytic_antiderivative)
    : a_(std::move(a)),
      d_(d),
      T_(T),
      antiderivative_(CumulativeIntegral::analytic(
          std::move(analytic_antiderivative), T)) {}

double CharacteristicCurve::cumulative(double t) const {
  if (!(t >= 0.0 && t <= T_ * (1.0 + 1e-14))) {
    throw std::domain_error("CharacteristicCurve: t outside [0, T]");
  }
  return antiderivative_(t);
}

double CharacteristicCurve::position(double t) const {
  return d_ + cumulative(t);
}

std::optional<double> CharacteristicCurve::crossing_time() const {
  if (!(position(T_) > 1.0)) return std::nullopt;
  // d(t) is strictly increasing (a >= alpha > 0), so bisection is safe.
  double lo = 0.0;
  double hi = T_;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (position(mid) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

CharacteristicCurve make_curve(const ProblemSpec& problem) {
  const double d = problem.ic().discontinuity();
  if (problem.a_antiderivative()) {
    return CharacteristicCurve(problem.a(), d, problem.final_time(),
                               problem.a_antiderivative());
  }
  return CharacteristicCurve(problem.a(), d, problem.final_time());
}

}  // namespace spcd
