// Scalar reference kernels. The arithmetic here is the specification the
// SIMD backends must reproduce bit for bit: one rounding per operation,
// explicit fma, and an order-insensitive max reduction.

#include <cmath>

#include "spcd/kernels.hpp"

namespace spcd::kernels {

namespace detail {

void assemble_level_scalar(const AssembleInput& in, double* lower,
                           double* diag, double* upper, double* rhs) {
  const double base = in.react + in.inv_step;
  for (int q = 0; q < in.n; ++q) {
    const double lo = -std::fma(in.eps, in.geom_lo[q], in.conv[q]);
    const double up = -(in.eps * in.geom_up[q]);
    lower[q] = lo;
    upper[q] = up;
    diag[q] = base - (lo + up);
    rhs[q] = std::fma(in.prev[q], in.inv_step, in.source[q]);
  }
}

void gather_lerp_scalar(const double* values, const std::int32_t* cell,
                        const double* weight, double* out, int n) {
  for (int q = 0; q < n; ++q) {
    const double v0 = values[cell[q]];
    const double v1 = values[cell[q] + 1];
    out[q] = std::fma(v0, 1.0 - weight[q], v1 * weight[q]);
  }
}

void blend_rows_scalar(const double* lo, const double* hi, double weight,
                       double* out, int n) {
  const double cw = 1.0 - weight;
  for (int q = 0; q < n; ++q) {
    out[q] = std::fma(lo[q], cw, hi[q] * weight);
  }
}

double max_abs_diff_scalar(const double* a, const double* b, int n) {
  double m = 0.0;
  for (int q = 0; q < n; ++q) {
    m = std::max(m, std::abs(a[q] - b[q]));
  }
  return m;
}

}  // namespace detail

const Backend& scalar() {
  static const Backend backend{
      "scalar",
      &detail::assemble_level_scalar,
      &detail::gather_lerp_scalar,
      &detail::blend_rows_scalar,
      &detail::max_abs_diff_scalar,
  };
  return backend;
}

}  // namespace spcd::kernels
