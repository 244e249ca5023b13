#include "spcd/singular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>

namespace spcd {

namespace {

constexpr double kInvSqrtPi = 0.56418958354775628694807945156077;

// Rational coefficients from W. J. Cody, "Rational Chebyshev approximation
// for the error function", Math. Comp. 23 (1969); the same data as netlib
// specfun CALERF.
constexpr double kErfA[5] = {3.1611237438705656, 113.864154151050156,
                             377.485237685302021, 3209.37758913846947,
                             0.185777706184603153};
constexpr double kErfB[4] = {23.6012909523441209, 244.024637934444173,
                             1282.61652607737228, 2844.23683343917062};
constexpr double kErfcC[9] = {0.564188496988670089, 8.88314979438837594,
                              66.1191906371416295,  298.635138197400131,
                              881.95222124176909,   1712.04761263407058,
                              2051.07837782607147,  1230.33935479799725,
                              2.15311535474403846e-8};
constexpr double kErfcD[8] = {15.7449261107098347, 117.693950891312499,
                              537.181101862009858, 1621.38957456669019,
                              3290.79923573345963, 4362.61909014324716,
                              3439.36767414372164, 1230.33935480374942};

// erf(z) for |z| <= 0.46875.
double erf_small(double z) {
  const double ysq = z * z;
  double xnum = kErfA[4] * ysq;
  double xden = ysq;
  for (int i = 0; i < 3; ++i) {
    xnum = (xnum + kErfA[i]) * ysq;
    xden = (xden + kErfB[i]) * ysq;
  }
  return z * (xnum + kErfA[3]) / (xden + kErfB[3]);
}

// exp(-z^2) with the argument split on a 1/16 grid so the large quadratic
// term is squared exactly.
double exp_neg_square(double z) {
  const double zsq = std::trunc(z * 16.0) / 16.0;
  const double del = (z - zsq) * (z + zsq);
  return std::exp(-zsq * zsq) * std::exp(-del);
}

// erfc(z) for 0.46875 < z <= 4.
double erfc_mid(double z) {
  double xnum = kErfcC[8] * z;
  double xden = z;
  for (int i = 0; i < 7; ++i) {
    xnum = (xnum + kErfcC[i]) * z;
    xden = (xden + kErfcD[i]) * z;
  }
  return exp_neg_square(z) * (xnum + kErfcC[7]) / (xden + kErfcD[7]);
}

// sqrt(pi) e^{z^2} erfc(z) for z > 4 via the Laplace continued fraction
//   1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))),
// evaluated with the modified Lentz iteration.
double erfcx_cf(double z) {
  constexpr double kTiny = 1e-300;
  double f = kTiny;
  double c = f;
  double d = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double a = (k == 1) ? 1.0 : 0.5 * (k - 1);
    d = z + a * d;
    if (d == 0.0) d = kTiny;
    c = z + a / c;
    if (c == 0.0) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return f;
}

}  // namespace

double erfc(double z) {
  if (std::isnan(z)) return z;
  if (z < 0.0) return 2.0 - erfc(-z);
  if (z <= 0.46875) return 1.0 - erf_small(z);
  if (z <= 4.0) return erfc_mid(z);
  if (z > 26.7) return 0.0;  // below the e^{-700} flush threshold
  return exp_neg_square(z) * erfcx_cf(z) * kInvSqrtPi;
}

SingularBasis::SingularBasis(const ProblemSpec& problem,
                             CharacteristicCurve curve)
    : eps_(problem.eps()),
      curve_(std::move(curve)),
      jumps_(problem.ic().jumps()),
      b_integral_(problem.has_b()
                      ? CumulativeIntegral(problem.b_field(),
                                           problem.final_time())
                      : CumulativeIntegral::zero(problem.final_time())),
      has_b_(problem.has_b()) {}

SingularBasis::SingularBasis(double eps, CharacteristicCurve curve,
                             std::array<double, 5> jumps)
    : eps_(eps),
      curve_(std::move(curve)),
      jumps_(jumps),
      b_integral_(CumulativeIntegral::zero(curve_.final_time())),
      has_b_(false) {
  if (!(eps_ > 0.0)) throw std::invalid_argument("SingularBasis: eps <= 0");
}

SingularBasis::SingularBasis(double eps, CharacteristicCurve curve,
                             std::array<double, 5> jumps,
                             CumulativeIntegral b_integral)
    : eps_(eps),
      curve_(std::move(curve)),
      jumps_(jumps),
      b_integral_(std::move(b_integral)),
      has_b_(true) {
  if (!(eps_ > 0.0)) throw std::invalid_argument("SingularBasis: eps <= 0");
}

double SingularBasis::jump(int i) const {
  if (i < 0 || i > 4) throw std::domain_error("SingularBasis: jump order");
  return jumps_[i];
}

double SingularBasis::gaussian(double x, double t) const {
  if (t <= 0.0) {
    return x == curve_.initial_position() ? 1.0 : 0.0;
  }
  const double dx = x - curve_.position(t);
  const double q = dx * dx / (4.0 * eps_ * t);
  return q > 700.0 ? 0.0 : std::exp(-q);
}

std::array<double, 5> SingularBasis::psi_all(double x, double t) const {
  const double T = curve_.final_time();
  if (!(x >= -1e-12 && x <= 1.0 + 1e-12 && t >= -1e-12 &&
        t <= T * (1.0 + 1e-12) + 1e-12)) {
    throw std::domain_error("SingularBasis: (x, t) outside the closed domain");
  }
  x = std::clamp(x, 0.0, 1.0);
  t = std::clamp(t, 0.0, T);
  std::array<double, 5> p{};
  if (t <= 0.0) {
    const double d0 = curve_.initial_position();
    const double dx = d0 - x;
    p[0] = x < d0 ? 0.0 : (x > d0 ? 2.0 : 1.0);
    p[1] = x <= d0 ? 0.0 : 2.0 * dx;
    p[2] = dx * p[1];
    p[3] = dx * p[2];
    p[4] = dx * p[3];
    return p;
  }
  const double dx = curve_.position(t) - x;  // d(t) - x
  const double et = eps_ * t;
  const double s = std::sqrt(et);
  double z;
  if (s > 0.0) {
    z = dx / (2.0 * s);
  } else {  // eps*t underflowed; use the limiting values
    z = dx > 0.0 ? std::numeric_limits<double>::infinity()
                 : (dx < 0.0 ? -std::numeric_limits<double>::infinity() : 0.0);
  }
  p[0] = spcd::erfc(z);
  const double q = dx * dx / (4.0 * et);
  const double e = q > 700.0 ? 0.0 : std::exp(-q);
  p[1] = dx * p[0] - 2.0 * kInvSqrtPi * s * e;
  p[2] = dx * p[1] + 2.0 * et * p[0];
  p[3] = dx * p[2] + 4.0 * et * p[1];
  p[4] = dx * p[3] + 6.0 * et * p[2];
  return p;
}

double SingularBasis::psi(int i, double x, double t) const {
  if (i < 0 || i > 4) throw std::domain_error("SingularBasis: psi index");
  return psi_all(x, t)[i];
}

double SingularBasis::damping(double t) const {
  return has_b_ ? std::exp(-b_integral_(t)) : 1.0;
}

double SingularBasis::singular_part(double x, double t, int level) const {
  if (level != 0 && level != 1) {
    throw std::domain_error("SingularBasis: level must be 0 or 1");
  }
  const auto p = psi_all(x, t);
  const double g = damping(t);
  double v = 0.5 * jumps_[0] * g * p[0];
  if (level == 1) v -= 0.5 * jumps_[1] * g * p[1];
  return v;
}

double SingularBasis::singular_part_dx(double x, double t, int level) const {
  if (level != 0 && level != 1) {
    throw std::domain_error("SingularBasis: level must be 0 or 1");
  }
  if (!(t > 0.0)) {
    throw std::domain_error("SingularBasis: singular_part_dx needs t > 0");
  }
  const double g = damping(t);
  const double psi0_dx = gaussian(x, t) / std::sqrt(M_PI * eps_ * t);
  double v = 0.5 * jumps_[0] * g * psi0_dx;
  if (level == 1) v += 0.5 * jumps_[1] * g * psi(0, x, t);
  return v;
}

RemainderData remainder_data(const ProblemSpec& problem,
                             const SingularBasis& basis, int level) {
  if (level != 0 && level != 1) {
    throw std::domain_error("remainder_data: level must be 0 or 1");
  }
  RemainderData rd;
  rd.level = level;
  const InitialCondition ic = problem.ic();
  const double d = ic.discontinuity();
  const double j0 = ic.jump(0);
  const double j1 = ic.jump(1);
  // Pointwise t -> 0+ limit of phi - S_part: the left piece is untouched,
  // the right piece drops the jump (and, at level 1, the slope jump), the
  // node at d takes phi(d-).
  rd.initial = [ic, d, j0, j1, level](double x) {
    if (x < d) return ic.left(0, x);
    if (x > d) {
      double v = ic.right(0, x) - j0;
      if (level == 1) v -= (x - d) * j1;
      return v;
    }
    return ic.left(0, d);
  };
  auto shared = std::make_shared<const SingularBasis>(basis);
  rd.left = [g0 = problem.g0_field(), shared, level](double t) {
    return (g0 ? g0(t) : 0.0) - shared->singular_part(0.0, t, level);
  };
  rd.right = [g1 = problem.g1_field(), shared, level](double t) {
    return (g1 ? g1(t) : 0.0) - shared->singular_part(1.0, t, level);
  };
  return rd;
}

double psi_residual(const SingularBasis& basis, int i, double x, double t,
                    double h) {
  if (i < 0 || i > 4) throw std::domain_error("psi_residual: psi index");
  if (!(h > 0.0)) throw std::domain_error("psi_residual: h must be positive");
  const double T = basis.curve().final_time();
  if (!(x - 2.0 * h >= 0.0 && x + 2.0 * h <= 1.0 && t - 2.0 * h > 0.0 &&
        t + 2.0 * h <= T)) {
    throw std::domain_error("psi_residual: stencil leaves the domain");
  }
  const auto p = [&](double xx, double tt) { return basis.psi(i, xx, tt); };
  const double f0 = p(x, t);
  const double fxp1 = p(x + h, t), fxm1 = p(x - h, t);
  const double fxp2 = p(x + 2 * h, t), fxm2 = p(x - 2 * h, t);
  const double ftp1 = p(x, t + h), ftm1 = p(x, t - h);
  const double ftp2 = p(x, t + 2 * h), ftm2 = p(x, t - 2 * h);
  const double dx = (8.0 * (fxp1 - fxm1) - (fxp2 - fxm2)) / (12.0 * h);
  const double dxx =
      (-fxp2 + 16.0 * fxp1 - 30.0 * f0 + 16.0 * fxm1 - fxm2) / (12.0 * h * h);
  const double dt = (8.0 * (ftp1 - ftm1) - (ftp2 - ftm2)) / (12.0 * h);
  const double a = basis.curve().coefficient()(t);
  return -basis.eps() * dxx + a * dx + dt;
}

}  // namespace spcd
