#include "spcd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "spcd/kernels.hpp"

namespace spcd {

GridFunction::GridFunction(std::shared_ptr<const TensorMesh> mesh)
    : mesh_(std::move(mesh)),
      nx_(mesh_->space.cells()),
      nt_(mesh_->time.cells()),
      v_(static_cast<std::size_t>(nx_ + 1) * (nt_ + 1), 0.0) {}

namespace {

constexpr double kPivotFloor = 1e-300;

void thomas_inplace(const double* lower, double* diag, const double* upper,
                    double* rhs, int n) {
  // Forward sweep overwrites diag with the running pivot and rhs with the
  // modified right-hand side; back substitution lands in rhs.
  if (!(std::abs(diag[0]) > kPivotFloor)) {
    throw std::runtime_error("tridiagonal_solve: vanishing pivot");
  }
  for (int i = 1; i < n; ++i) {
    const double w = lower[i - 1] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    if (!(std::abs(diag[i]) > kPivotFloor)) {
      throw std::runtime_error("tridiagonal_solve: vanishing pivot");
    }
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (int i = n - 2; i >= 0; --i) {
    rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
  }
}

struct LevelWorkspace {
  std::vector<double> geom_lo, geom_up, inv_h;  // interior geometry, fixed
  std::vector<double> conv, source;             // per-level inputs
  std::vector<double> lower, diag, upper, rhs;  // assembled system

  explicit LevelWorkspace(const SpaceMesh& xm) {
    const int nu = xm.cells() - 1;
    geom_lo.resize(nu);
    geom_up.resize(nu);
    inv_h.resize(nu);
    conv.resize(nu);
    source.assign(nu, 0.0);
    lower.resize(nu);
    diag.resize(nu);
    upper.resize(nu);
    rhs.resize(nu);
    for (int q = 0; q < nu; ++q) {
      const double h_i = xm.width(q + 1);
      const double h_ip1 = xm.width(q + 2);
      geom_lo[q] = 2.0 / ((h_i + h_ip1) * h_i);
      geom_up[q] = 2.0 / ((h_i + h_ip1) * h_ip1);
      inv_h[q] = 1.0 / h_i;
    }
  }
};

void check_m_matrix(const LevelWorkspace& w, double react, double inv_step,
                    int nu) {
  // The analytic row sum is react + inv_step; the assembled one carries
  // cancellation noise of order eps_mach * |off-diagonal mass|, which
  // dwarfs inv_step on layer meshes. Check against that noise level.
  for (int q = 0; q < nu; ++q) {
    const double row_sum = w.diag[q] + w.lower[q] + w.upper[q];
    const double noise = 8.0 * std::numeric_limits<double>::epsilon() *
                         (std::abs(w.lower[q]) + std::abs(w.upper[q]) +
                          react + inv_step);
    if (!(w.lower[q] <= 0.0) || !(w.upper[q] <= 0.0) || !(w.diag[q] > 0.0) ||
        !(row_sum >= inv_step - noise)) {
      throw std::runtime_error("solve: M-matrix sign structure violated");
    }
  }
}

// Assembles and solves one implicit level; writes the full level-j row
// (boundary endpoints included) into out.
void step_level(const DiscreteProblem& dp, LevelWorkspace& w, int j,
                const double* prev, double* out) {
  const auto& xm = dp.mesh->space;
  const auto& tm = dp.mesh->time;
  const int nu = xm.cells() - 1;
  const double t_j = tm.nodes[j];
  const double k_j = tm.step(j);
  const double inv_k = 1.0 / k_j;
  const double react = dp.reaction ? dp.reaction(t_j) : 0.0;
  if (!(react >= 0.0)) {
    throw std::runtime_error("solve: negative reaction coefficient");
  }

  if (dp.convection_varies_in_x) {
    for (int q = 0; q < nu; ++q) {
      const double a = dp.convection(xm.nodes[q + 1], t_j);
      if (!(a >= dp.alpha)) {
        throw std::runtime_error("solve: a < alpha at a mesh node");
      }
      w.conv[q] = a * w.inv_h[q];
    }
  } else {
    const double a = dp.convection(0.0, t_j);
    if (!(a >= dp.alpha)) {
      throw std::runtime_error("solve: a(t_j) < alpha");
    }
    for (int q = 0; q < nu; ++q) w.conv[q] = a * w.inv_h[q];
  }
  if (dp.source) {
    for (int q = 0; q < nu; ++q) {
      w.source[q] = dp.source(xm.nodes[q + 1], t_j);
    }
  }

  kernels::AssembleInput in{w.geom_lo.data(), w.geom_up.data(), w.conv.data(),
                            w.source.data(), prev + 1,
                            dp.eps,          react,
                            inv_k,           nu};
  kernels::active().assemble_level(in, w.lower.data(), w.diag.data(),
                                   w.upper.data(), w.rhs.data());
  check_m_matrix(w, react, inv_k, nu);

  const double gl = dp.left[j];
  const double gr = dp.right[j];
  w.rhs[0] -= w.lower[0] * gl;
  w.rhs[nu - 1] -= w.upper[nu - 1] * gr;
  thomas_inplace(w.lower.data() + 1, w.diag.data(), w.upper.data(), w.rhs.data(),
                 nu);
  out[0] = gl;
  std::copy_n(w.rhs.data(), nu, out + 1);
  out[xm.cells()] = gr;
}

void validate(const DiscreteProblem& dp) {
  if (!dp.mesh) throw std::invalid_argument("solve: missing mesh");
  if (!dp.convection) throw std::invalid_argument("solve: missing convection");
  if (!(dp.eps > 0.0)) throw std::invalid_argument("solve: eps must be > 0");
  const std::size_t np = dp.mesh->space.nodes.size();
  const std::size_t mp = dp.mesh->time.nodes.size();
  if (dp.initial.size() != np || dp.left.size() != mp ||
      dp.right.size() != mp) {
    throw std::invalid_argument(
        "solve: initial/boundary arrays do not match the mesh");
  }
}

}  // namespace

std::vector<double> tridiagonal_solve(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (n == 0 || rhs.size() != n || lower.size() + 1 != n ||
      upper.size() + 1 != n) {
    throw std::invalid_argument("tridiagonal_solve: inconsistent sizes");
  }
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> x(rhs.begin(), rhs.end());
  thomas_inplace(lower.data(), d.data(), upper.data(), x.data(),
                 static_cast<int>(n));
  return x;
}

std::vector<double> advance_level(const DiscreteProblem& dp, int j,
                                  std::span<const double> prev) {
  validate(dp);
  const int m = dp.mesh->time.cells();
  if (j < 1 || j > m) {
    throw std::invalid_argument("advance_level: level index outside 1..M");
  }
  if (prev.size() != dp.mesh->space.nodes.size()) {
    throw std::invalid_argument("advance_level: prev has the wrong length");
  }
  LevelWorkspace w(dp.mesh->space);
  std::vector<double> out(prev.size());
  step_level(dp, w, j, prev.data(), out.data());
  return out;
}

GridFunction solve(const DiscreteProblem& dp) {
  validate(dp);
  GridFunction y(dp.mesh);
  std::copy(dp.initial.begin(), dp.initial.end(), y.level(0));
  LevelWorkspace w(dp.mesh->space);
  const int m = dp.mesh->time.cells();
  for (int j = 1; j <= m; ++j) {
    step_level(dp, w, j, y.level(j - 1), y.level(j));
  }
  return y;
}

DiscreteProblem make_discrete_remainder(const ProblemSpec& problem, int n,
                                        int m, int level,
                                        const ScalarField2& convection_xt) {
  CharacteristicCurve curve = make_curve(problem);
  SingularBasis basis(problem, curve);
  RemainderData rd = remainder_data(problem, basis, level);

  auto mesh = std::make_shared<TensorMesh>(
      TensorMesh{build_space_mesh(n, problem.eps(), problem.alpha()),
                 select_time_mesh(curve, problem, m)});

  DiscreteProblem dp;
  dp.mesh = mesh;
  dp.eps = problem.eps();
  dp.alpha = problem.alpha();
  if (convection_xt) {
    dp.convection = convection_xt;
    dp.convection_varies_in_x = true;
    // With a = a(x,t) the subtracted part is no longer annihilated by the
    // operator: the remainder satisfies L y = f - (a(x,t) - d'(t)) dS/dx,
    // with d'(t) the curve speed the basis was built from. The term
    // vanishes identically when a depends on t alone.
    dp.source = [f = problem.f_field(), a_xt = convection_xt,
                 a_curve = problem.a(),
                 shared = std::make_shared<const SingularBasis>(basis),
                 level](double x, double t) {
      const double base = f ? f(x, t) : 0.0;
      return base - (a_xt(x, t) - a_curve(t)) *
                        shared->singular_part_dx(x, t, level);
    };
  } else {
    dp.convection = [a = problem.a()](double, double t) { return a(t); };
    dp.source = problem.f_field();
  }
  dp.reaction = problem.b_field();

  dp.initial.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    dp.initial[i] = rd.initial(mesh->space.nodes[i]);
  }
  dp.left.resize(m + 1);
  dp.right.resize(m + 1);
  dp.left[0] = dp.initial.front();
  dp.right[0] = dp.initial.back();
  for (int j = 1; j <= m; ++j) {
    const double t_j = mesh->time.nodes[j];
    dp.left[j] = rd.left(t_j);
    dp.right[j] = rd.right(t_j);
  }
  return dp;
}

GridFunction solve_remainder(const ProblemSpec& problem, int n, int m,
                             int level, const ScalarField2& convection_xt) {
  return solve(make_discrete_remainder(problem, n, m, level, convection_xt));
}

double scheme_residual(const DiscreteProblem& dp, const GridFunction& y) {
  validate(dp);
  const auto& xm = dp.mesh->space;
  const auto& tm = dp.mesh->time;
  const int n = xm.cells();
  const int m = tm.cells();
  // Componentwise relative residual of the level systems actually solved:
  // |row . y - rhs| / (sum_j |a_ij| |y_j| + |rhs_i|), reassembled here from
  // the mesh (Oettli-Prager backward-error measure).
  double worst = 0.0;
  for (int j = 1; j <= m; ++j) {
    const double t_j = tm.nodes[j];
    const double inv_k = 1.0 / tm.step(j);
    const double b = dp.reaction ? dp.reaction(t_j) : 0.0;
    for (int i = 1; i < n; ++i) {
      const double h_i = xm.width(i);
      const double h_ip1 = xm.width(i + 1);
      const double a =
          dp.convection(dp.convection_varies_in_x ? xm.nodes[i] : 0.0, t_j);
      const double glo = 2.0 / ((h_i + h_ip1) * h_i);
      const double gup = 2.0 / ((h_i + h_ip1) * h_ip1);
      const double lo = -(dp.eps * glo + a / h_i);
      const double up = -dp.eps * gup;
      const double di = b + inv_k - (lo + up);
      const double f = dp.source ? dp.source(xm.nodes[i], t_j) : 0.0;
      const double rhs = f + y(i, j - 1) * inv_k;
      const double r =
          lo * y(i - 1, j) + di * y(i, j) + up * y(i + 1, j) - rhs;
      const double scale = std::abs(lo * y(i - 1, j)) +
                           std::abs(di * y(i, j)) +
                           std::abs(up * y(i + 1, j)) + std::abs(rhs);
      worst = std::max(worst, std::abs(r) / std::max(scale, 1e-30));
    }
  }
  return worst;
}

}  // namespace spcd
