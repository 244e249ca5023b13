#pragma once

#include <functional>
#include <vector>

namespace spcd {

/// Adaptive composite Simpson integration of f over [a, b] with absolute
/// tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);

/// Cumulative antiderivative G(t) = int_0^t g(s) ds on [0, T] for a
/// nonnegative integrand g.
///
/// The quadrature-backed variant integrates each of `cells` uniform segments
/// with adaptive Simpson and evaluates between the cached samples with a
/// monotone cubic Hermite whose slopes are the exact integrand values g(t_i)
/// (limited in the Fritsch-Carlson sense, so the interpolant never loses the
/// monotonicity of G). An analytic variant bypasses the cache entirely.
class CumulativeIntegral {
 public:
  /// Identically zero on [0, T].
  static CumulativeIntegral zero(double T);

  /// Quadrature-backed cache of int_0^t g.
  CumulativeIntegral(std::function<double(double)> g, double T,
                     int cells = 4096, double tol = 1e-12);

  /// Exact closed form G with G(0) = 0.
  static CumulativeIntegral analytic(std::function<double(double)> G,
                                     double T);

  double operator()(double t) const;
  double final_time() const { return T_; }
  double total() const;

 private:
  CumulativeIntegral() = default;

  double T_ = 0.0;
  std::function<double(double)> analytic_;  // when set, used directly
  std::vector<double> value_;               // cached G(t_i)
  std::vector<double> slope_;               // limited Hermite slopes
  double h_ = 0.0;
};

}  // namespace spcd
