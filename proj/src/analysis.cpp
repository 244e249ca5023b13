#include "spcd/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "spcd/kernels.hpp"

namespace spcd {

namespace {

constexpr double kMergeTol = 1e-13;

struct Locator {
  int cell = 0;
  double weight = 0.0;
};

// Cell index and weight of v in a strictly increasing node sequence; an
// exact node hit yields weight 0 (except the final node, weight 1), which
// the symmetric lerp turns into the nodal value bit for bit.
Locator locate(const std::vector<double>& nodes, double v) {
  const int size = static_cast<int>(nodes.size());
  auto it = std::upper_bound(nodes.begin(), nodes.end(), v);
  int cell = static_cast<int>(it - nodes.begin()) - 1;
  cell = std::clamp(cell, 0, size - 2);
  if (v == nodes[cell + 1] && cell + 1 < size - 1) {
    return {cell + 1, 0.0};
  }
  return {cell, (v - nodes[cell]) / (nodes[cell + 1] - nodes[cell])};
}

std::vector<double> union_nodes(const std::vector<double>& a,
                                const std::vector<double>& b) {
  std::vector<double> merged;
  merged.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(),
             std::back_inserter(merged));
  std::vector<double> out;
  out.reserve(merged.size());
  for (double v : merged) {
    if (out.empty() || v - out.back() > kMergeTol) out.push_back(v);
  }
  return out;
}

// x-interpolated rows of one grid, produced level by level. Union time
// values are visited in ascending order, so a two-row rolling cache keeps
// the memory at O(P) regardless of M.
class InterpolatedRows {
 public:
  InterpolatedRows(const GridFunction& g, const std::vector<double>& xs)
      : grid_(g), cols_(static_cast<int>(xs.size())) {
    cell_.resize(cols_);
    weight_.resize(cols_);
    for (int q = 0; q < cols_; ++q) {
      const Locator loc = locate(g.mesh().space.nodes, xs[q]);
      cell_[q] = loc.cell;
      weight_[q] = loc.weight;
    }
    rows_[0].resize(cols_);
    rows_[1].resize(cols_);
  }

  // Ascending access contract: callers request row(j) then row(j+1) with j
  // nondecreasing across calls. The pointer from row(j) stays valid through
  // the following row(j+1) because advancing recycles buffers by swap.
  const double* row(int j) {
    if (j == held_[0]) return rows_[0].data();
    if (j != held_[1]) {
      if (j == held_[1] + 1) {  // advancing one level: recycle the newer row
        rows_[0].swap(rows_[1]);
        held_[0] = held_[1];
      }
      kernels::active().gather_lerp(grid_.level(j), cell_.data(),
                                    weight_.data(), rows_[1].data(), cols_);
      held_[1] = j;
    }
    return rows_[1].data();
  }

 private:
  const GridFunction& grid_;
  int cols_;
  std::vector<std::int32_t> cell_;
  std::vector<double> weight_;
  std::vector<double> rows_[2];
  int held_[2] = {-1, -1};
};

}  // namespace

double bilinear_eval(const GridFunction& y, double x, double t) {
  const auto& xs = y.mesh().space.nodes;
  const auto& ts = y.mesh().time.nodes;
  if (!(x >= xs.front() - 1e-12 && x <= xs.back() + 1e-12 &&
        t >= ts.front() - 1e-12 && t <= ts.back() + 1e-12)) {
    throw std::domain_error("bilinear_eval: point outside the domain");
  }
  const Locator lx = locate(xs, std::clamp(x, xs.front(), xs.back()));
  const Locator lt = locate(ts, std::clamp(t, ts.front(), ts.back()));
  const double c00 = y(lx.cell, lt.cell);
  const double c10 = y(lx.cell + 1, lt.cell);
  const double c01 = y(lx.cell, lt.cell + 1);
  const double c11 = y(lx.cell + 1, lt.cell + 1);
  const double lo = c00 * (1.0 - lx.weight) + c10 * lx.weight;
  const double hi = c01 * (1.0 - lx.weight) + c11 * lx.weight;
  return lo * (1.0 - lt.weight) + hi * lt.weight;
}

double two_mesh_difference(const GridFunction& coarse,
                           const GridFunction& fine) {
  const auto& ma = coarse.mesh();
  const auto& mb = fine.mesh();
  const double ta = ma.time.final_time();
  const double tb = mb.time.final_time();
  if (std::abs(ta - tb) > 1e-12 * std::max({ta, tb, 1.0})) {
    throw std::invalid_argument("two_mesh_difference: domains differ");
  }
  const std::vector<double> ux = union_nodes(ma.space.nodes, mb.space.nodes);
  const std::vector<double> ut = union_nodes(ma.time.nodes, mb.time.nodes);
  const int p = static_cast<int>(ux.size());

  InterpolatedRows za(coarse, ux);
  InterpolatedRows zb(fine, ux);

  const auto& k = kernels::active();
  std::vector<double> row_a(p);
  std::vector<double> row_b(p);
  double worst = 0.0;
  for (double t : ut) {
    const Locator la = locate(ma.time.nodes, t);
    const Locator lb = locate(mb.time.nodes, t);
    const double* a_lo = za.row(la.cell);
    const double* a_hi = za.row(la.cell + 1);
    k.blend_rows(a_lo, a_hi, la.weight, row_a.data(), p);
    const double* b_lo = zb.row(lb.cell);
    const double* b_hi = zb.row(lb.cell + 1);
    k.blend_rows(b_lo, b_hi, lb.weight, row_b.data(), p);
    worst = std::max(worst, k.max_abs_diff(row_a.data(), row_b.data(), p));
  }
  return worst;
}

double order(double d_coarse, double d_fine) {
  if (!(d_coarse > 0.0) || !(d_fine > 0.0)) {
    throw std::domain_error("order: differences must be positive");
  }
  return std::log2(d_coarse / d_fine);
}

double reconstruct_u(const GridFunction& y, const SingularBasis& basis,
                     int level, double x, double t) {
  return bilinear_eval(y, x, t) + basis.singular_part(x, t, level);
}

namespace {

// Solves all columns for one ladder entry and fills its series.
void run_ladder_entry(const ProblemFamily& family, const SweepOptions& opt,
                      EpsSeries& series) {
  const double eps = std::ldexp(1.0, -series.exponent);
  const ProblemSpec problem = family.make(eps);
  series.cells.resize(opt.levels);

  auto solve_checked = [&](int n, int m) {
    DiscreteProblem dp =
        make_discrete_remainder(problem, n, m, opt.level, family.convection_xt);
    GridFunction y = solve(dp);
    if (opt.check_residuals) {
      const double r = scheme_residual(dp, y);
      if (!(r <= opt.residual_tol)) {
        char msg[96];
        std::snprintf(msg, sizeof msg,
                      "run_sweep: scheme residual %.3e above tolerance %.1e",
                      r, opt.residual_tol);
        throw std::runtime_error(msg);
      }
    }
    return y;
  };

  if (opt.m_rule.kind == MRule::Kind::MatchN) {
    // Reuse the (2N, 2M) solution as the next column's coarse solve.
    GridFunction coarse = solve_checked(opt.n0, opt.m_rule.of(opt.n0));
    for (int l = 0; l < opt.levels; ++l) {
      const int n_fine = opt.n0 << (l + 1);
      GridFunction fine = solve_checked(n_fine, opt.m_rule.of(n_fine));
      series.cells[l].n = opt.n0 << l;
      series.cells[l].m = opt.m_rule.of(opt.n0 << l);
      series.cells[l].diff = two_mesh_difference(coarse, fine);
      coarse = std::move(fine);
    }
  } else {
    for (int l = 0; l < opt.levels; ++l) {
      const int n = opt.n0 << l;
      const int m = opt.m_rule.of(n);
      GridFunction coarse = solve_checked(n, m);
      GridFunction fine = solve_checked(2 * n, 2 * m);
      series.cells[l] = {n, m, two_mesh_difference(coarse, fine), 0.0};
    }
  }
  for (int l = 0; l < opt.levels; ++l) {
    series.cells[l].order =
        l + 1 < opt.levels
            ? order(series.cells[l].diff, series.cells[l + 1].diff)
            : std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

TwoMeshReport run_sweep(const ProblemFamily& family, const SweepOptions& opt) {
  if (opt.levels < 1) {
    throw std::invalid_argument("run_sweep: need at least one column");
  }
  std::vector<int> exponents = opt.eps_list;
  if (exponents.empty()) {
    if (opt.eps_min_exp > opt.eps_max_exp) {
      throw std::invalid_argument("run_sweep: empty eps ladder");
    }
    for (int e = opt.eps_min_exp; e <= opt.eps_max_exp; ++e) {
      exponents.push_back(e);
    }
  }
  TwoMeshReport report;
  report.example_id = family.id;
  report.level = opt.level;
  for (int e : exponents) {
    report.eps_exponents.push_back(e);
    report.per_eps.push_back(EpsSeries{e, {}});
  }

  const int jobs = static_cast<int>(report.per_eps.size());
  int workers = opt.workers > 0
                    ? opt.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, jobs);

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int idx = next.fetch_add(1);
      if (idx >= jobs || failed.load()) break;
      try {
        run_ladder_entry(family, opt, report.per_eps[idx]);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        break;
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  report.uniform.resize(opt.levels);
  for (int l = 0; l < opt.levels; ++l) {
    auto& cell = report.uniform[l];
    cell = report.per_eps.front().cells[l];
    for (const auto& series : report.per_eps) {
      cell.diff = std::max(cell.diff, series.cells[l].diff);
    }
  }
  for (int l = 0; l < opt.levels; ++l) {
    report.uniform[l].order =
        l + 1 < opt.levels
            ? order(report.uniform[l].diff, report.uniform[l + 1].diff)
            : std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

}  // namespace spcd
