#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spcd/examples.hpp"

namespace spcd {

struct SurfaceRequest {
  int eps_exp = 12;
  int n = 64;
};

/// Driver configuration; the defaults reproduce the reference table layout
/// (N0 = 32, 7 columns, eps ladder 2^0..2^-26, M = N).
struct RunConfig {
  int example = 1;
  int level = 0;
  int n0 = 32;
  int levels = 7;
  int eps_min_exp = 0;
  int eps_max_exp = 26;
  MRule m_rule{};
  std::string out_dir = "out";
  std::optional<SurfaceRequest> surfaces;
  int workers = 0;
  bool emit_tables = true;
};

struct RunOutputs {
  TwoMeshReport report;
  std::vector<std::string> files;  // paths written
};

/// Runs the sweep for one example and emits the table files (CSV and
/// markdown) and, when requested, the y- and u-surface node files.
/// Identical configs produce byte-identical outputs.
RunOutputs run_example(const RunConfig& config);

/// The five registered examples with their regime notes.
std::string list_examples();

/// Table serialization. Columns: eps_exp,N,M,D,P,D_full,P_full with the
/// display columns in 4-significant-digit scientific / 3-decimal fixed
/// notation and the *_full columns carrying full precision. Uniform rows
/// use "uniform" in the eps_exp column; the finest column has an empty P.
void write_table_csv(const TwoMeshReport& report, std::ostream& os);
void write_table_markdown(const TwoMeshReport& report, std::ostream& os);

/// Inverse of write_table_csv via the full-precision columns (exact
/// round-trip). Throws std::runtime_error on malformed input.
TwoMeshReport parse_table_csv(std::istream& is);

/// Node triples (x, t, value), one row per node, t-major.
void write_surface_csv(const GridFunction& grid,
                       const std::vector<double>& values, std::ostream& os);

}  // namespace spcd
