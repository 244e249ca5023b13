#include "spcd/examples.hpp"

#include <cmath>
#include <stdexcept>

namespace spcd {

namespace {

InitialCondition::Piece constant_piece(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; },
          [](double) { return 0.0; }, [](double) { return 0.0; },
          [](double) { return 0.0; }};
}

ScalarField2 shared_source() {
  return [](double x, double t) { return 4.0 * x * (1.0 - x) * t + t * t; };
}

ScalarField1 constant(double c) {
  return [c](double) { return c; };
}

ProblemSpec make_example1(double eps) {
  return ProblemSpec(ProblemSpec::Data{
      .a = [](double t) { return 1.0 + t * t; },
      .b = {},
      .f = shared_source(),
      .ic = InitialCondition(constant_piece(-2.0), constant_piece(1.0), 0.3),
      .g0 = constant(-2.0),
      .g1 = constant(1.0),
      .eps = eps,
      .alpha = 1.0,
      .T = 0.5,
      .a_antiderivative = [](double t) { return t + t * t * t / 3.0; }});
}

ProblemSpec make_example2(double eps) {
  InitialCondition::Piece left = {
      [](double x) { return -x * x * x; }, [](double x) { return -3.0 * x * x; },
      [](double x) { return -6.0 * x; },   [](double) { return -6.0; },
      [](double) { return 0.0; }};
  InitialCondition::Piece right = {
      [](double x) { return (1.0 - x) * (1.0 - x) * (1.0 - x); },
      [](double x) { return -3.0 * (1.0 - x) * (1.0 - x); },
      [](double x) { return 6.0 * (1.0 - x); },
      [](double) { return -6.0; },
      [](double) { return 0.0; }};
  return ProblemSpec(ProblemSpec::Data{
      .a = [](double t) { return 1.0 + t * t; },
      .b = constant(1.0),
      .f = shared_source(),
      .ic = InitialCondition(std::move(left), std::move(right), 0.3),
      .g0 = constant(0.0),
      .g1 = constant(0.0),
      .eps = eps,
      .alpha = 1.0,
      .T = 0.5,
      .a_antiderivative = [](double t) { return t + t * t * t / 3.0; }});
}

ProblemSpec make_example3(double eps) {
  return ProblemSpec(ProblemSpec::Data{
      .a = [](double t) { return 1.0 + t; },
      .b = {},
      .f = shared_source(),
      .ic = InitialCondition(constant_piece(-2.0), constant_piece(1.0), 0.3),
      .g0 = constant(-2.0),
      .g1 = constant(1.0),
      .eps = eps,
      .alpha = 1.0,
      .T = 2.0,
      .a_antiderivative = [](double t) { return t + 0.5 * t * t; }});
}

ProblemSpec make_example4(double eps) {
  const double d = std::min(0.3, std::sqrt(eps));
  InitialCondition::Piece left = {
      [](double x) { return -2.0 * x; }, [](double) { return -2.0; },
      [](double) { return 0.0; },        [](double) { return 0.0; },
      [](double) { return 0.0; }};
  InitialCondition::Piece right = {
      [](double x) { return 1.0 - x * x; }, [](double x) { return -2.0 * x; },
      [](double) { return -2.0; },          [](double) { return 0.0; },
      [](double) { return 0.0; }};
  return ProblemSpec(ProblemSpec::Data{
      .a = [](double t) { return 1.0 + t * t; },
      .b = {},
      .f = shared_source(),
      .ic = InitialCondition(std::move(left), std::move(right), d),
      .g0 = [](double t) { return 4.0 * t * t; },
      .g1 = [](double t) { return t * (t + 0.5); },
      .eps = eps,
      .alpha = 1.0,
      .T = 0.5,
      .a_antiderivative = [](double t) { return t + t * t * t / 3.0; }});
}

double example5_curve(double t) {
  return (0.1 + std::tan(t)) / (1.0 - 0.1 * std::tan(t));
}

ProblemSpec make_example5(double eps) {
  // The convective coefficient depends on x; the curve machinery sees its
  // restriction along the characteristic, a(t) = 1 + d(t)^2 = d'(t), with
  // the closed-form antiderivative d(t) - d(0).
  return ProblemSpec(ProblemSpec::Data{
      .a = [](double t) {
        const double d = example5_curve(t);
        return 1.0 + d * d;
      },
      .b = {},
      .f = shared_source(),
      .ic = InitialCondition(constant_piece(-2.0), constant_piece(1.0), 0.1),
      .g0 = constant(-2.0),
      .g1 = constant(1.0),
      .eps = eps,
      .alpha = 1.0,
      .T = 0.5,
      .a_antiderivative = [](double t) { return example5_curve(t) - 0.1; }});
}

std::vector<ExampleSpec> build_registry() {
  std::vector<ExampleSpec> reg(5);

  reg[0] = {1,
            "constant pieces, a = 1+t^2",
            "[phi](0.3) = 3, [phi'](0.3) = 0; interior layer travels along "
            "d(t) = 0.3 + t + t^3/3 and never reaches x = 1: almost "
            "first-order uniform convergence",
            true,
            {1, "example1", "", &make_example1, {}}};
  reg[1] = {2,
            "cubic pieces, reaction term b = 1",
            "[phi'](0.3) = -1.2 nonzero: level 0 degrades to the M^{-1/2} "
            "regime (orders near 0.5); level 1 subtracts the psi_1 term and "
            "restores almost first order",
            true,
            {2, "example2", "", &make_example2, {}}};
  reg[2] = {3,
            "a = 1+t, layers merge",
            "T = 2 lets the interior layer reach the boundary layer; the "
            "crossing time T* = sqrt(2.4) - 1 ~ 0.5492 centers a piecewise "
            "uniform time mesh",
            true,
            {3, "example3", "", &make_example3, {}}};
  reg[3] = {4,
            "eps-dependent discontinuity",
            "d = min{0.3, sqrt(eps)} couples the problem family to the "
            "ladder; [phi](d) and [phi'](d) both nonzero, observed uniform "
            "order about 0.5",
            true,
            {4, "example4", "", &make_example4, {}}};
  reg[4] = {5,
            "space-dependent convection (expected non-uniform)",
            "a = 1 + x^2 falls outside the a = a(t) theory; the pipeline "
            "freezes a at each node and the two-mesh table exhibits "
            "non-uniform behavior by design",
            false,
            {5,
             "example5",
             "",
             &make_example5,
             [](double x, double) { return 1.0 + x * x; }}};
  for (auto& spec : reg) {
    spec.family.notes = spec.notes;
  }
  return reg;
}

}  // namespace

const std::vector<ExampleSpec>& example_registry() {
  static const std::vector<ExampleSpec> registry = build_registry();
  return registry;
}

const ExampleSpec& example(int id) {
  if (id < 1 || id > 5) {
    throw std::invalid_argument("example: id must be 1..5");
  }
  return example_registry()[id - 1];
}

TwoMeshReport run_sweep(int example_id, const SweepOptions& opt) {
  return run_sweep(example(example_id).family, opt);
}

}  // namespace spcd
