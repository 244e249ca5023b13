#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spcd/solver.hpp"

namespace spcd {

/// Piecewise-bilinear interpolant value of Y at (x, t); exact at nodes.
/// Throws std::domain_error outside [0,1] x [0,T].
double bilinear_eval(const GridFunction& y, double x, double t);

/// Maximum of |bilinear(Yc) - bilinear(Yf)| over the tensor product of the
/// unions of the x-node and t-node sets of the two meshes (nodes closer
/// than 1e-13 merged). Both solutions must live on the same domain.
double two_mesh_difference(const GridFunction& coarse,
                           const GridFunction& fine);

/// log2(d_coarse / d_fine); both arguments must be positive.
double order(double d_coarse, double d_fine);

/// Rule mapping the per-level N to the time-cell count M.
struct MRule {
  enum class Kind { MatchN, Fixed };
  Kind kind = Kind::MatchN;
  int value = 0;
  int of(int n) const { return kind == Kind::MatchN ? n : value; }
};

struct SweepCell {
  int n = 0;
  int m = 0;
  double diff = 0.0;
  double order = 0.0;  // NaN on the finest level
};

struct EpsSeries {
  int exponent = 0;  // eps = 2^-exponent
  std::vector<SweepCell> cells;
};

/// Two-mesh differences D and orders P over an eps-ladder, plus the uniform
/// rows D^{N,M} = max_eps D^{N,M}_eps and their orders.
struct TwoMeshReport {
  int example_id = 0;
  int level = 0;
  std::vector<int> eps_exponents;
  std::vector<EpsSeries> per_eps;
  std::vector<SweepCell> uniform;
};

/// A problem family indexed by eps (Example 4's discontinuity location
/// depends on eps, so specs are constructed per ladder entry).
struct ProblemFamily {
  int id = 0;
  std::string name;
  std::string notes;
  std::function<ProblemSpec(double eps)> make;
  ScalarField2 convection_xt;  // set only for the space-dependent demo
};

struct SweepOptions {
  int n0 = 32;
  int levels = 4;  // number of table columns; solves reach n0 * 2^levels
  int level = 0;   // subtraction level
  int eps_min_exp = 0;
  int eps_max_exp = 26;
  std::vector<int> eps_list;  // when non-empty, overrides the min/max range
  MRule m_rule{};
  int workers = 0;  // 0 = hardware concurrency
  bool check_residuals = false;
  double residual_tol = 1e-10;
};

/// Runs the two-mesh study: for each eps = 2^-e and each column
/// (N, M) = (n0 2^l, rule), computes D and P, reusing the (2N, 2M) solve of
/// one column as the coarse solve of the next, then the uniform rows.
/// Ladder entries run concurrently on `workers` threads.
TwoMeshReport run_sweep(const ProblemFamily& family, const SweepOptions& opt);

}  // namespace spcd
