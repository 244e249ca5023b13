#include "spcd/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spcd {

SpaceMesh build_space_mesh(int n, double eps, double alpha) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("build_space_mesh: N must be even and >= 4");
  }
  if (!(eps > 0.0) || !(alpha > 0.0)) {
    throw std::invalid_argument("build_space_mesh: eps and alpha must be > 0");
  }
  SpaceMesh mesh;
  mesh.eps = eps;
  mesh.alpha = alpha;
  mesh.sigma = std::min(0.5, eps / alpha * std::log(static_cast<double>(n)));
  mesh.nodes.resize(n + 1);
  const int half = n / 2;
  const double coarse_end = 1.0 - mesh.sigma;
  // Affine maps of integer indices per piece; no cumulative addition, so the
  // endpoints and the transition node come out exact.
  for (int i = 0; i <= half; ++i) {
    mesh.nodes[i] = coarse_end * (static_cast<double>(i) / half);
  }
  for (int m = 0; m < half; ++m) {
    mesh.nodes[n - m] = 1.0 - mesh.sigma * (static_cast<double>(m) / half);
  }
  return mesh;
}

TimeMesh build_time_mesh(int m, double T, double eps, double alpha,
                         std::optional<double> t_star) {
  if (m < 1) throw std::invalid_argument("build_time_mesh: M must be >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("build_time_mesh: T must be > 0");
  TimeMesh mesh;
  if (!t_star) {
    mesh.kind = TimeMeshKind::Uniform;
    mesh.nodes.resize(m + 1);
    for (int j = 0; j <= m; ++j) {
      mesh.nodes[j] = T * (static_cast<double>(j) / m);
    }
    return mesh;
  }
  const double ts = *t_star;
  if (!(ts > 0.0 && ts < T)) {
    throw std::invalid_argument("build_time_mesh: T* must lie inside (0, T)");
  }
  if (m % 4 != 0) {
    throw std::invalid_argument(
        "build_time_mesh: M must be divisible by 4 for the crossing mesh");
  }
  if (!(eps > 0.0) || !(alpha > 0.0)) {
    throw std::invalid_argument("build_time_mesh: eps and alpha must be > 0");
  }
  mesh.kind = TimeMeshKind::ShishkinAroundCrossing;
  mesh.t_star = ts;
  mesh.tau = std::min({ts / 2.0, (T - ts) / 2.0,
                       2.0 * std::sqrt(ts * eps * std::log(static_cast<double>(m))) / alpha});
  const double tau = mesh.tau;
  const int quarter = m / 4;
  mesh.nodes.resize(m + 1);
  for (int j = 0; j < quarter; ++j) {
    mesh.nodes[j] = (ts - tau) * (static_cast<double>(j) / quarter);
  }
  mesh.nodes[quarter] = ts - tau;
  for (int j = 1; j < 2 * quarter; ++j) {
    mesh.nodes[quarter + j] =
        (ts - tau) + 2.0 * tau * (static_cast<double>(j) / (2 * quarter));
  }
  mesh.nodes[3 * quarter] = ts + tau;
  for (int j = 1; j <= quarter; ++j) {
    mesh.nodes[m - quarter + j] =
        T - (T - ts - tau) * (static_cast<double>(quarter - j) / quarter);
  }
  return mesh;
}

TimeMesh select_time_mesh(const CharacteristicCurve& curve,
                          const ProblemSpec& problem, int m) {
  const auto t_star = curve.crossing_time();
  return build_time_mesh(m, problem.final_time(), problem.eps(),
                         problem.alpha(), t_star);
}

TimeMesh select_time_mesh(const ProblemSpec& problem, int m) {
  return select_time_mesh(make_curve(problem), problem, m);
}

}  // namespace spcd
