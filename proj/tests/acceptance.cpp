// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Numeric references and tolerances are pinned in this file.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "spcd/analysis.hpp"
#include "spcd/examples.hpp"
#include "spcd/kernels.hpp"
#include "spcd/singular.hpp"
#include "spcd/solver.hpp"
#include "testutil.hpp"

using namespace spcd;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id,
              detail.c_str());
  if (!ok) ++g_failures;
}

bool within_rel(double value, double reference, double rel, double* worst) {
  const double err = std::abs(value - reference) / std::abs(reference);
  if (worst) *worst = std::max(*worst, err);
  return err <= rel;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const EpsSeries& series_for(const TwoMeshReport& rep, int exponent) {
  for (const auto& s : rep.per_eps) {
    if (s.exponent == exponent) return s;
  }
  throw std::runtime_error("missing ladder entry");
}

struct PaperSeries {
  int exponent;
  std::vector<double> d;  // N = 32, 64, 128, 256
  std::vector<double> p;  // orders at the same columns
};

// ---------------------------------------------------------------- criteria

void criterion_1_and_8(const TwoMeshReport& rep) {
  const std::vector<PaperSeries> table1 = {
      {0,
       {3.495e-2, 9.470e-3, 3.704e-3, 1.656e-3},
       {1.884, 1.354, 1.161, 1.031}},
      {3,
       {1.673e-2, 1.079e-2, 5.191e-3, 2.547e-3},
       {0.633, 1.055, 1.027, 1.013}},
      {12,
       {2.968e-3, 1.707e-3, 9.543e-4, 5.288e-4},
       {0.798, 0.839, 0.852, 0.853}},
      {26,
       {3.001e-3, 1.717e-3, 9.600e-4, 5.322e-4},
       {0.806, 0.839, 0.851, 0.852}},
  };
  bool ok = true;
  double worst_d = 0.0, worst_p = 0.0;
  for (const auto& ref : table1) {
    const auto& got = series_for(rep, ref.exponent);
    for (int l = 0; l < 4; ++l) {
      ok &= within_rel(got.cells[l].diff, ref.d[l], 0.05, &worst_d);
      const double p_err = std::abs(got.cells[l].order - ref.p[l]);
      worst_p = std::max(worst_p, p_err);
      ok &= p_err <= 0.1;
    }
  }
  report(1, ok,
         "example 1 level 0 vs reference table: worst rel(D) = " +
             fmt(worst_d) + " (<= 0.05), worst |dP| = " + fmt(worst_p) +
             " (<= 0.1)");

  // criterion 8: spot check at (2^-12, N = 512)
  const auto& spot = series_for(rep, 12);
  double err = 0.0;
  const bool ok8 = within_rel(spot.cells[4].diff, 2.927e-4, 0.07, &err);
  report(8, ok8,
         "desk-scale spot check D(2^-12, 512) = " + fmt(spot.cells[4].diff) +
             " vs 2.927e-4, rel = " + fmt(err) + " (<= 0.07)");
}

void criterion_uniform(int id, const TwoMeshReport& rep,
                       const std::vector<double>& d_ref,
                       const std::vector<double>& p_ref, double d_tol,
                       double p_tol, const std::string& label) {
  bool ok = true;
  double worst_d = 0.0, worst_p = 0.0;
  for (std::size_t l = 0; l < d_ref.size(); ++l) {
    ok &= within_rel(rep.uniform[l].diff, d_ref[l], d_tol, &worst_d);
  }
  for (std::size_t l = 0; l < p_ref.size(); ++l) {
    const double err = std::abs(rep.uniform[l].order - p_ref[l]);
    worst_p = std::max(worst_p, err);
    ok &= err <= p_tol;
  }
  report(id, ok,
         label + ": worst rel(D) = " + fmt(worst_d) + " (<= " + fmt(d_tol) +
             "), worst |dP| = " + fmt(worst_p) + " (<= " + fmt(p_tol) + ")");
}

void criterion_4(const TwoMeshReport& rep) {
  const ProblemSpec p3 = example(3).family.make(1.0);
  const auto t_star = make_curve(p3).crossing_time();
  const double t_ref = std::sqrt(2.4) - 1.0;
  bool ok = t_star.has_value() && std::abs(*t_star - t_ref) <= 1e-9;

  const std::vector<double> d_ref = {8.020e-2, 5.263e-2, 2.838e-2, 1.670e-2};
  double worst_d = 0.0;
  for (std::size_t l = 0; l < d_ref.size(); ++l) {
    ok &= within_rel(rep.uniform[l].diff, d_ref[l], 0.07, &worst_d);
  }
  report(4, ok,
         "example 3 (time mesh around T*): |T* - " + fmt(t_ref) + "| = " +
             fmt(t_star ? std::abs(*t_star - t_ref) : 1.0) +
             " (<= 1e-9), worst rel(D) = " + fmt(worst_d) + " (<= 0.07)");
}

void criterion_5(const TwoMeshReport& rep) {
  // Known-red: the reference experiments report spikes of 6.8E-01/7.0E-01
  // at these cells, but the exact remainder of the space-dependent problem
  // carries an interior feature of amplitude <= ~0.25 whose width is far
  // below these mesh sizes, so a faithful solve cannot reach 0.4 here. The
  // criterion is asserted as stated and reported honestly either way; the
  // qualitative non-uniformity (non-decaying D, negative per-eps orders)
  // is checked alongside.
  const double d14 = series_for(rep, 14).cells[1].diff;  // N = 64
  const double d15 = series_for(rep, 15).cells[1].diff;
  const bool spike = std::max(d14, d15) >= 0.4;

  std::vector<double> orders;
  for (const auto& cell : rep.uniform) {
    if (!std::isnan(cell.order)) orders.push_back(cell.order);
  }
  bool has_negative = false;
  bool increasing = true, decreasing = true;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    has_negative |= orders[i] < 0.0;
    if (i > 0) {
      increasing &= orders[i] >= orders[i - 1];
      decreasing &= orders[i] <= orders[i - 1];
    }
  }
  const bool non_monotone = !increasing && !decreasing;
  const bool ok = spike && has_negative && non_monotone;
  std::string order_text;
  for (double o : orders) order_text += fmt(o) + " ";
  int negative_per_eps = 0;
  for (const auto& series : rep.per_eps) {
    for (const auto& cell : series.cells) {
      if (cell.order < 0.0) ++negative_per_eps;
    }
  }
  report(5, ok,
         "example 5 non-uniformity: max(D(2^-14,64), D(2^-15,64)) = " +
             fmt(std::max(d14, d15)) + " (>= 0.4), uniform orders [ " +
             order_text + "] non-monotone with a negative entry (" +
             std::to_string(negative_per_eps) +
             " negative per-eps order entries observed)");
}

void criterion_6() {
  bool ok = true;
  std::string detail;

  // erfc vs quadrature oracle at 10^4 points
  {
    auto gen = testutil::rng(123);
    std::uniform_real_distribution<double> pick(-6.0, 26.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double z = pick(gen);
      const double ours = spcd::erfc(z);
      if (std::abs(ours) <= 1e-300) continue;
      const double ref = testutil::erfc_quadrature(z);
      worst = std::max(worst, std::abs(ours - ref) / std::abs(ref));
    }
    ok &= worst <= 1e-13;
    detail += "erfc rel err " + fmt(worst) + " (<= 1e-13)";
  }

  // finite-difference L psi_i -> 0 at observed order >= 3.5
  {
    struct Coef {
      ScalarField1 a;
      ScalarField1 antiderivative;
    };
    const std::vector<Coef> coefs = {
        {[](double) { return 1.0; }, [](double t) { return t; }},
        {[](double t) { return 1.0 + t; },
         [](double t) { return t + 0.5 * t * t; }},
        {[](double t) { return 1.0 + t * t; },
         [](double t) { return t + t * t * t / 3.0; }},
    };
    double worst_order = 10.0;
    auto gen = testutil::rng(321);
    std::uniform_real_distribution<double> px(0.15, 0.85);
    std::uniform_real_distribution<double> pt(0.15, 0.4);
    const double h1 = 0.01, h2 = 0.005;
    for (const auto& coef : coefs) {
      CharacteristicCurve curve(coef.a, 0.3, 0.5, coef.antiderivative);
      SingularBasis basis(0.1, curve, {3.0, -1.2, 6.0, 0.0, 0.0});
      for (int pt_i = 0; pt_i < 20; ++pt_i) {
        const double x = px(gen);
        const double t = pt(gen);
        for (int i = 0; i <= 4; ++i) {
          const double r1 = std::abs(psi_residual(basis, i, x, t, h1));
          const double r2 = std::abs(psi_residual(basis, i, x, t, h2));
          if (r1 < 1e-11 && r2 < 1e-11) continue;  // converged to noise
          worst_order = std::min(worst_order, std::log2(r1 / r2));
        }
      }
    }
    ok &= worst_order >= 3.5;
    detail += ", L psi FD order " + fmt(worst_order) + " (>= 3.5)";
  }

  // d psi_i / dx = -i psi_{i-1} matches central differences at 4th order
  {
    CharacteristicCurve curve([](double t) { return 1.0 + t * t; }, 0.3, 0.5,
                              [](double t) { return t + t * t * t / 3.0; });
    SingularBasis basis(0.1, curve, {3.0, -1.2, 6.0, 0.0, 0.0});
    double worst_order = 10.0;
    auto gen = testutil::rng(77);
    std::uniform_real_distribution<double> px(0.15, 0.85);
    std::uniform_real_distribution<double> pt(0.1, 0.45);
    const double h1 = 0.02, h2 = 0.01;
    auto dx_err = [&](int i, double x, double t, double h) {
      auto p = [&](double xx) { return basis.psi(i, xx, t); };
      const double dx =
          (8.0 * (p(x + h) - p(x - h)) - (p(x + 2 * h) - p(x - 2 * h))) /
          (12.0 * h);
      return std::abs(dx + i * basis.psi(i - 1, x, t));
    };
    for (int pt_i = 0; pt_i < 20; ++pt_i) {
      const double x = px(gen);
      const double t = pt(gen);
      for (int i = 1; i <= 4; ++i) {
        const double e1 = dx_err(i, x, t, h1);
        const double e2 = dx_err(i, x, t, h2);
        if (e1 < 1e-12 && e2 < 1e-12) continue;
        worst_order = std::min(worst_order, std::log2(e1 / e2));
      }
    }
    ok &= worst_order >= 3.5;
    detail += ", dpsi/dx identity order " + fmt(worst_order) + " (>= 3.5)";
  }

  // psi_0 jump capture at t = 1e-10
  {
    CharacteristicCurve curve([](double) { return 1.0; }, 0.3, 0.5,
                              [](double t) { return t; });
    SingularBasis basis(0.1, curve, {3.0, 0.0, 0.0, 0.0, 0.0});
    const double t = 1e-10;
    const bool capture = basis.psi(0, 0.29, t) <= 1e-12 &&
                         std::abs(basis.psi(0, 0.31, t) - 2.0) <= 1e-12;
    ok &= capture;
    detail += std::string(", jump capture ") + (capture ? "ok" : "failed");
  }

  report(6, ok, "singular-basis property suite: " + detail);
}

void criterion_7(bool sweeps_ok) {
  // The sweeps above ran with the M-matrix assertions active and the
  // residual check enabled; a violation would have aborted them.
  bool ok = sweeps_ok;

  // discrete comparison principle on 100 randomized zero-source problems
  auto gen = testutil::rng(2718);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::uniform_int_distribution<int> half_n(2, 12);
  std::uniform_int_distribution<int> pick_m(1, 16);
  std::uniform_real_distribution<double> log_eps(-20.0, 0.0);
  bool comparison_ok = true;
  for (int trial = 0; trial < 100 && comparison_ok; ++trial) {
    const int n = 2 * half_n(gen);
    const int m = pick_m(gen);
    const double eps = std::exp2(log_eps(gen));
    const double c0 = 0.5 + std::abs(val(gen));
    DiscreteProblem dp;
    dp.mesh = std::make_shared<TensorMesh>(TensorMesh{
        build_space_mesh(n, eps, c0), build_time_mesh(m, 0.5, eps, c0)});
    dp.eps = eps;
    dp.alpha = c0;
    dp.convection = [c0](double, double t) { return c0 + 0.5 * t; };
    dp.initial.resize(n + 1);
    dp.left.resize(m + 1);
    dp.right.resize(m + 1);
    for (auto& v : dp.initial) v = val(gen);
    for (auto& v : dp.left) v = val(gen);
    for (auto& v : dp.right) v = val(gen);
    double lo = *std::min_element(dp.initial.begin(), dp.initial.end());
    double hi = *std::max_element(dp.initial.begin(), dp.initial.end());
    for (int j = 1; j <= m; ++j) {
      lo = std::min({lo, dp.left[j], dp.right[j]});
      hi = std::max({hi, dp.left[j], dp.right[j]});
    }
    const GridFunction y = solve(dp);
    for (int j = 0; j <= m && comparison_ok; ++j) {
      for (int i = 0; i <= n; ++i) {
        if (!(y(i, j) >= lo - 1e-12 && y(i, j) <= hi + 1e-12)) {
          comparison_ok = false;
          break;
        }
      }
    }
  }
  ok &= comparison_ok;
  report(7, ok,
         std::string("scheme structure: M-matrix assertions and residual "
                     "checks active across all sweeps (") +
             (sweeps_ok ? "clean" : "violated") +
             "), comparison principle on 100 random problems (" +
             (comparison_ok ? "holds" : "violated") + ")");
}

}  // namespace

int main() {
  std::printf("spcd acceptance suite (kernels: %s)\n", kernels::active().name);
  bool sweeps_ok = true;

  try {
    SweepOptions o1;
    o1.n0 = 32;
    o1.levels = 5;  // D columns 32..512; solves reach 1024
    o1.level = 0;
    o1.eps_list = {0, 3, 12, 26};
    o1.check_residuals = true;
    const TwoMeshReport rep1 = run_sweep(1, o1);
    criterion_1_and_8(rep1);

    SweepOptions o2;
    o2.n0 = 32;
    o2.levels = 4;  // D columns 32..256
    o2.level = 0;
    o2.check_residuals = true;
    const TwoMeshReport rep2 = run_sweep(2, o2);
    criterion_uniform(2, rep2, {1.552e-2, 1.133e-2, 8.083e-3, 5.827e-3},
                      {0.454, 0.487, 0.472}, 0.05, 0.08,
                      "example 2 level 0 uniform rows");

    SweepOptions o3 = o2;
    o3.level = 1;
    const TwoMeshReport rep3 = run_sweep(2, o3);
    criterion_uniform(3, rep3, {1.403e-2, 8.451e-3, 4.856e-3, 2.669e-3},
                      {0.731, 0.799, 0.863}, 0.05, 0.08,
                      "example 2 level 1 uniform rows");

    SweepOptions o4 = o2;
    o4.level = 0;
    const TwoMeshReport rep4 = run_sweep(3, o4);
    criterion_4(rep4);

    SweepOptions o5 = o2;
    const TwoMeshReport rep5 = run_sweep(5, o5);
    criterion_5(rep5);
  } catch (const std::exception& e) {
    sweeps_ok = false;
    std::printf("[FAIL] sweep aborted: %s\n", e.what());
    g_failures += 5;
  }

  criterion_6();
  criterion_7(sweeps_ok);

  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
