#pragma once

#include <cstdint>
#include <string_view>

namespace spcd::kernels {

/// Inputs of one implicit time level of the upwind scheme, reduced to pure
/// per-row arithmetic. For interior unknowns q = 0..n-1 (node i = q+1):
///   lower[q] = -(eps * geom_lo[q] + conv[q])
///   upper[q] = -eps * geom_up[q]
///   diag[q]  = (react + inv_step) - (lower[q] + upper[q])
///   rhs[q]   = source[q] + prev[q] * inv_step
/// where geom_lo = 2/((h_i+h_{i+1}) h_i), geom_up = 2/((h_i+h_{i+1}) h_{i+1})
/// and conv = a(x_i, t_j) / h_i.
struct AssembleInput {
  const double* geom_lo;
  const double* geom_up;
  const double* conv;
  const double* source;
  const double* prev;
  double eps;
  double react;
  double inv_step;
  int n;
};

/// One kernel backend. All backends compute bit-identical results: the
/// arithmetic is specified per element (fma-based) and the only reduction,
/// max_abs_diff, is order-insensitive. Equivalence tests assert exact
/// equality between backends.
struct Backend {
  const char* name;
  void (*assemble_level)(const AssembleInput& in, double* lower, double* diag,
                         double* upper, double* rhs);
  /// out[q] = v[cell[q]] * (1 - weight[q]) + v[cell[q]+1] * weight[q],
  /// evaluated as fma(v0, 1-w, v1*w) so a weight of exactly 0 or 1
  /// reproduces the respective node value bit for bit.
  void (*gather_lerp)(const double* values, const std::int32_t* cell,
                      const double* weight, double* out, int n);
  /// out[q] = lo[q] * (1 - weight) + hi[q] * weight, same evaluation.
  void (*blend_rows)(const double* lo, const double* hi, double weight,
                     double* out, int n);
  /// max over q of |a[q] - b[q]| (0 for n = 0).
  double (*max_abs_diff)(const double* a, const double* b, int n);
};

/// Scalar reference backend; always available.
const Backend& scalar();

/// AVX2 backend, or nullptr when not compiled in or the CPU lacks AVX2/FMA.
const Backend* avx2();

/// The runtime-selected backend. Picks the widest available one unless the
/// SPCD_KERNELS environment variable ("scalar" or "avx2") or select() says
/// otherwise.
const Backend& active();

/// Force a backend by name ("scalar", "avx2", "auto"). Throws
/// std::invalid_argument for unknown or unavailable names.
void select(std::string_view name);

}  // namespace spcd::kernels
