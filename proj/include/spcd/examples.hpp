#pragma once

#include <string>
#include <vector>

#include "spcd/analysis.hpp"

namespace spcd {

/// One of the five registered test problems.
struct ExampleSpec {
  int id = 0;
  std::string title;
  std::string notes;          // which regime it exercises
  bool expected_uniform = true;
  ProblemFamily family;
};

const std::vector<ExampleSpec>& example_registry();

/// Throws std::invalid_argument for ids outside 1..5.
const ExampleSpec& example(int id);

/// Spec'd sweep entry point by example id.
TwoMeshReport run_sweep(int example_id, const SweepOptions& opt);

}  // namespace spcd
