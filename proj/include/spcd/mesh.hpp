#pragma once

#include <optional>
#include <vector>

#include "spcd/problem.hpp"

namespace spcd {

/// Piecewise-uniform Shishkin mesh on [0,1]: N/2 equal cells on [0, 1-sigma]
/// and N/2 equal cells on [1-sigma, 1], sigma = min{0.5, (eps/alpha) ln N}.
struct SpaceMesh {
  std::vector<double> nodes;  // x_0 = 0 < ... < x_N = 1
  double sigma = 0.5;
  double eps = 1.0;
  double alpha = 1.0;

  int cells() const { return static_cast<int>(nodes.size()) - 1; }
  double width(int i) const { return nodes[i] - nodes[i - 1]; }  // h_i
};

enum class TimeMeshKind { Uniform, ShishkinAroundCrossing };

/// Uniform time mesh, or the three-piece mesh centered on the crossing time:
/// M/4 cells on [0, T*-tau], M/2 cells on [T*-tau, T*+tau], M/4 cells on
/// [T*+tau, T], tau = min{T*/2, (T-T*)/2, 2 sqrt(T* eps ln M)/alpha}.
struct TimeMesh {
  std::vector<double> nodes;  // t_0 = 0 < ... < t_M = T
  TimeMeshKind kind = TimeMeshKind::Uniform;
  double tau = 0.0;     // valid for the Shishkin kind
  double t_star = 0.0;  // valid for the Shishkin kind

  int cells() const { return static_cast<int>(nodes.size()) - 1; }
  double final_time() const { return nodes.back(); }
  double step(int j) const { return nodes[j] - nodes[j - 1]; }  // k_j
};

struct TensorMesh {
  SpaceMesh space;
  TimeMesh time;
};

/// Throws std::invalid_argument for odd N, N < 4, or nonpositive eps/alpha.
SpaceMesh build_space_mesh(int n, double eps, double alpha);

/// Uniform when t_star is absent; otherwise the three-piece mesh (requires
/// 0 < T* < T and M divisible by 4, else std::invalid_argument).
TimeMesh build_time_mesh(int m, double T, double eps, double alpha,
                         std::optional<double> t_star = std::nullopt);

/// Computes the crossing time of the problem's characteristic curve and
/// picks the uniform or crossing-centered mesh accordingly.
TimeMesh select_time_mesh(const ProblemSpec& problem, int m);
TimeMesh select_time_mesh(const CharacteristicCurve& curve,
                          const ProblemSpec& problem, int m);

}  // namespace spcd
