#include "spcd/report.hpp"

#include <cmath>
#include <limits>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "spcd/solver.hpp"

namespace spcd {

namespace {

std::string sci4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3E", v);
  return buf;
}

std::string fix3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string full(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv_row(std::ostream& os, const std::string& label,
                   const SweepCell& cell) {
  os << label << ',' << cell.n << ',' << cell.m << ',' << sci4(cell.diff)
     << ',';
  if (!std::isnan(cell.order)) os << fix3(cell.order);
  os << ',' << full(cell.diff) << ',';
  if (!std::isnan(cell.order)) os << full(cell.order);
  os << '\n';
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

void write_table_csv(const TwoMeshReport& report, std::ostream& os) {
  os << "# example " << report.example_id << " level " << report.level << '\n';
  os << "eps_exp,N,M,D,P,D_full,P_full\n";
  for (const auto& series : report.per_eps) {
    for (const auto& cell : series.cells) {
      write_csv_row(os, std::to_string(series.exponent), cell);
    }
  }
  for (const auto& cell : report.uniform) {
    write_csv_row(os, "uniform", cell);
  }
}

TwoMeshReport parse_table_csv(std::istream& is) {
  TwoMeshReport report;
  std::string line;
  if (!std::getline(is, line) ||
      std::sscanf(line.c_str(), "# example %d level %d", &report.example_id,
                  &report.level) != 2) {
    throw std::runtime_error("parse_table_csv: missing metadata line");
  }
  if (!std::getline(is, line) || line != "eps_exp,N,M,D,P,D_full,P_full") {
    throw std::runtime_error("parse_table_csv: missing header line");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 7) {
      throw std::runtime_error("parse_table_csv: malformed row: " + line);
    }
    SweepCell cell;
    cell.n = std::stoi(fields[1]);
    cell.m = std::stoi(fields[2]);
    cell.diff = std::stod(fields[5]);
    cell.order = fields[6].empty() ? std::numeric_limits<double>::quiet_NaN()
                                   : std::stod(fields[6]);
    if (fields[0] == "uniform") {
      report.uniform.push_back(cell);
    } else {
      const int exp = std::stoi(fields[0]);
      if (report.per_eps.empty() || report.per_eps.back().exponent != exp) {
        report.per_eps.push_back(EpsSeries{exp, {}});
        report.eps_exponents.push_back(exp);
      }
      report.per_eps.back().cells.push_back(cell);
    }
  }
  return report;
}

void write_table_markdown(const TwoMeshReport& report, std::ostream& os) {
  os << "Example " << report.example_id << ", subtraction level "
     << report.level << ": two-mesh global differences D and orders P\n\n";
  os << "| eps |";
  const auto& head = report.per_eps.empty() ? report.uniform
                                            : report.per_eps.front().cells;
  for (const auto& cell : head) {
    if (cell.n == cell.m) {
      os << " N=M=" << cell.n << " |";
    } else {
      os << " N=" << cell.n << ", M=" << cell.m << " |";
    }
  }
  os << "\n|---|";
  for (std::size_t i = 0; i < head.size(); ++i) os << "---|";
  os << '\n';
  auto emit_pair = [&](const std::string& d_label, const std::string& p_label,
                       const std::vector<SweepCell>& cells) {
    os << "| " << d_label << " |";
    for (const auto& cell : cells) os << ' ' << sci4(cell.diff) << " |";
    os << "\n| " << p_label << " |";
    for (const auto& cell : cells) {
      os << ' ' << (std::isnan(cell.order) ? std::string() : fix3(cell.order))
         << " |";
    }
    os << '\n';
  };
  for (const auto& series : report.per_eps) {
    emit_pair("2^-" + std::to_string(series.exponent), "", series.cells);
  }
  emit_pair("D^{N,M}", "P^{N,M}", report.uniform);
}

void write_surface_csv(const GridFunction& grid,
                       const std::vector<double>& values, std::ostream& os) {
  const auto& xs = grid.mesh().space.nodes;
  const auto& ts = grid.mesh().time.nodes;
  if (values.size() != xs.size() * ts.size()) {
    throw std::invalid_argument("write_surface_csv: value count mismatch");
  }
  os << "x,t,value\n";
  for (std::size_t j = 0; j < ts.size(); ++j) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      os << full(xs[i]) << ',' << full(ts[j]) << ','
         << full(values[j * xs.size() + i]) << '\n';
    }
  }
}

std::string list_examples() {
  std::ostringstream os;
  for (const auto& spec : example_registry()) {
    os << "example " << spec.id << ": " << spec.title << '\n'
       << "    " << spec.notes << '\n';
  }
  return os.str();
}

RunOutputs run_example(const RunConfig& config) {
  const ExampleSpec& spec = example(config.example);
  if (config.level != 0 && config.level != 1) {
    throw std::invalid_argument("run_example: level must be 0 or 1");
  }
  if (!spec.expected_uniform) {
    std::cerr << "warning: example " << spec.id
              << " has space-dependent convection; the method is not "
                 "parameter-uniform for this class and the table below is "
                 "expected to exhibit non-uniform behavior\n";
  }

  SweepOptions opt;
  opt.n0 = config.n0;
  opt.levels = config.levels;
  opt.level = config.level;
  opt.eps_min_exp = config.eps_min_exp;
  opt.eps_max_exp = config.eps_max_exp;
  opt.m_rule = config.m_rule;
  opt.workers = config.workers;

  RunOutputs out;
  out.report = run_sweep(spec.family, opt);

  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  const std::string stem = "example" + std::to_string(spec.id) + "_level" +
                           std::to_string(config.level);
  if (config.emit_tables) {
    const fs::path csv_path = fs::path(config.out_dir) / ("table_" + stem + ".csv");
    std::ofstream csv(csv_path);
    write_table_csv(out.report, csv);
    out.files.push_back(csv_path.string());

    const fs::path md_path = fs::path(config.out_dir) / ("table_" + stem + ".md");
    std::ofstream md(md_path);
    write_table_markdown(out.report, md);
    out.files.push_back(md_path.string());
  }

  if (config.surfaces) {
    const int n = config.surfaces->n;
    const int m = config.m_rule.of(n);
    const double eps = std::ldexp(1.0, -config.surfaces->eps_exp);
    const ProblemSpec problem = spec.family.make(eps);
    const CharacteristicCurve curve = make_curve(problem);
    const SingularBasis basis(problem, curve);
    const GridFunction y = solve_remainder(problem, n, m, config.level,
                                           spec.family.convection_xt);
    const auto& xs = y.mesh().space.nodes;
    const auto& ts = y.mesh().time.nodes;
    std::vector<double> y_values(xs.size() * ts.size());
    std::vector<double> u_values(xs.size() * ts.size());
    for (std::size_t j = 0; j < ts.size(); ++j) {
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double yv = y(static_cast<int>(i), static_cast<int>(j));
        y_values[j * xs.size() + i] = yv;
        u_values[j * xs.size() + i] =
            yv + basis.singular_part(xs[i], ts[j], config.level);
      }
    }
    const std::string tag = stem + "_eps" +
                            std::to_string(config.surfaces->eps_exp) + "_n" +
                            std::to_string(n);
    const fs::path y_path =
        fs::path(config.out_dir) / ("surface_y_" + tag + ".csv");
    std::ofstream ys(y_path);
    write_surface_csv(y, y_values, ys);
    out.files.push_back(y_path.string());
    const fs::path u_path =
        fs::path(config.out_dir) / ("surface_u_" + tag + ".csv");
    std::ofstream us(u_path);
    write_surface_csv(y, u_values, us);
    out.files.push_back(u_path.string());
  }
  return out;
}

}  // namespace spcd
