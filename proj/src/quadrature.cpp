#include "spcd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace spcd {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  return adaptive_step(f, a, b, fa, fm, fb, whole, tol, 40);
}

CumulativeIntegral CumulativeIntegral::zero(double T) {
  CumulativeIntegral c;
  c.T_ = T;
  c.analytic_ = [](double) { return 0.0; };
  return c;
}

CumulativeIntegral CumulativeIntegral::analytic(std::function<double(double)> G,
                                                double T) {
  CumulativeIntegral c;
  c.T_ = T;
  c.analytic_ = std::move(G);
  return c;
}

CumulativeIntegral::CumulativeIntegral(std::function<double(double)> g,
                                       double T, int cells, double tol) {
  if (T <= 0.0 || cells < 1) {
    throw std::invalid_argument("CumulativeIntegral: need T > 0, cells >= 1");
  }
  T_ = T;
  h_ = T / cells;
  value_.resize(cells + 1);
  slope_.resize(cells + 1);
  value_[0] = 0.0;
  const double cell_tol = tol / cells;
  for (int i = 0; i < cells; ++i) {
    const double t0 = T * (static_cast<double>(i) / cells);
    const double t1 = T * (static_cast<double>(i + 1) / cells);
    value_[i + 1] = value_[i] + adaptive_simpson(g, t0, t1, cell_tol);
  }
  for (int i = 0; i <= cells; ++i) {
    slope_[i] = g(T * (static_cast<double>(i) / cells));
  }
  // Fritsch-Carlson limiter: with a nonnegative integrand the data are
  // nondecreasing; capping each slope at 3x the adjacent secants keeps the
  // Hermite interpolant monotone without disturbing smooth integrands.
  for (int i = 0; i <= cells; ++i) {
    double cap = 3.0 * ((i > 0 ? (value_[i] - value_[i - 1]) : (value_[i + 1] - value_[i])) / h_);
    if (i > 0 && i < cells) {
      cap = 3.0 * std::min(value_[i] - value_[i - 1], value_[i + 1] - value_[i]) / h_;
    }
    slope_[i] = std::clamp(slope_[i], 0.0, std::max(cap, 0.0));
  }
}

double CumulativeIntegral::operator()(double t) const {
  if (!(t >= -1e-14 && t <= T_ * (1.0 + 1e-14) + 1e-14)) {
    throw std::domain_error("CumulativeIntegral: t outside [0, T]");
  }
  if (analytic_) return analytic_(std::clamp(t, 0.0, T_));
  t = std::clamp(t, 0.0, T_);
  const int cells = static_cast<int>(value_.size()) - 1;
  int i = std::min(static_cast<int>(t / h_), cells - 1);
  const double t_i = T_ * (static_cast<double>(i) / cells);
  const double s = t - t_i;
  const double v0 = value_[i];
  const double m0 = slope_[i];
  const double m1 = slope_[i + 1];
  const double sec = (value_[i + 1] - v0) / h_;
  const double c2 = (3.0 * sec - 2.0 * m0 - m1) / h_;
  const double c3 = (m0 + m1 - 2.0 * sec) / (h_ * h_);
  return v0 + s * (m0 + s * (c2 + s * c3));
}

double CumulativeIntegral::total() const { return (*this)(T_); }

}  // namespace spcd
