#pragma once

#include <memory>
#include <span>
#include <vector>

#include "spcd/mesh.hpp"
#include "spcd/singular.hpp"

namespace spcd {

/// Node values on a tensor mesh, one row per time level.
class GridFunction {
 public:
  explicit GridFunction(std::shared_ptr<const TensorMesh> mesh);

  const TensorMesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const TensorMesh>& mesh_ptr() const { return mesh_; }

  int nx() const { return nx_; }  // N
  int nt() const { return nt_; }  // M

  double operator()(int i, int j) const { return v_[idx(i, j)]; }
  double& at(int i, int j) { return v_[idx(i, j)]; }

  const double* level(int j) const { return v_.data() + j * (nx_ + 1); }
  double* level(int j) { return v_.data() + j * (nx_ + 1); }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(j) * (nx_ + 1) + i;
  }

  std::shared_ptr<const TensorMesh> mesh_;
  int nx_;
  int nt_;
  std::vector<double> v_;
};

/// Fully discrete problem for the implicit-Euler upwind scheme
///   -eps d2x Y + a D-x Y + b Y + D-t Y = f
/// with endpoints pinned to the boundary arrays.
struct DiscreteProblem {
  std::shared_ptr<const TensorMesh> mesh;
  double eps = 1.0;
  double alpha = 1.0;              // lower bound checked against a(t_j)
  ScalarField2 convection;         // a(x,t); x is ignored unless flagged
  ScalarField1 reaction;           // b(t); empty means 0
  ScalarField2 source;             // f(x,t); empty means 0
  std::vector<double> initial;     // N+1 values at t_0
  std::vector<double> left;        // M+1 values at x = 0
  std::vector<double> right;       // M+1 values at x = 1
  bool convection_varies_in_x = false;
};

/// Thomas algorithm for a diagonally dominant tridiagonal system.
/// lower/upper have length n-1, diag/rhs length n. Throws
/// std::invalid_argument on size mismatch and std::runtime_error on a
/// vanishing pivot (cannot occur for the scheme's matrices).
std::vector<double> tridiagonal_solve(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs);

/// One implicit step: given level j-1 values, returns the full level-j
/// vector (endpoints pinned to the boundary data). 1 <= j <= M.
std::vector<double> advance_level(const DiscreteProblem& dp, int j,
                                  std::span<const double> prev);

/// Marches all time levels. Asserts the M-matrix sign structure at every
/// level while assembling (a violation throws std::runtime_error).
GridFunction solve(const DiscreteProblem& dp);

/// Builds the discrete remainder problem: curve, basis and remainder data,
/// the Shishkin space mesh, the (auto-selected) time mesh, node data with
/// boundary values g_k - S_part. `convection_xt`, when supplied, replaces
/// a(t) in the assembly only (space-dependent demo mode); the singular part
/// still follows the curve.
DiscreteProblem make_discrete_remainder(const ProblemSpec& problem, int n,
                                        int m, int level,
                                        const ScalarField2& convection_xt = {});

/// End-to-end remainder solve: make_discrete_remainder followed by solve.
GridFunction solve_remainder(const ProblemSpec& problem, int n, int m,
                             int level, const ScalarField2& convection_xt = {});

/// u(x,t) ~ bilinear(Y)(x,t) + S_part(x,t); S_part evaluated analytically.
double reconstruct_u(const GridFunction& y, const SingularBasis& basis,
                     int level, double x, double t);

/// Max over interior nodes of the scheme residual, measured relative to the
/// size of the terms entering the equation at that node.
double scheme_residual(const DiscreteProblem& dp, const GridFunction& y);

}  // namespace spcd
