// Command-line driver: two-mesh convergence studies for the five registered
// test problems, with CSV/markdown table emission and optional surface dumps.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spcd/report.hpp"

namespace {

spcd::MRule parse_m_rule(const std::string& text) {
  if (text == "n") return spcd::MRule{spcd::MRule::Kind::MatchN, 0};
  int fixed = 0;
  if (std::sscanf(text.c_str(), "fixed:%d", &fixed) == 1 && fixed >= 1) {
    return spcd::MRule{spcd::MRule::Kind::Fixed, fixed};
  }
  throw CLI::ValidationError("--m-rule", "expected 'n' or 'fixed:<int>'");
}

spcd::SurfaceRequest parse_surfaces(const std::string& text) {
  spcd::SurfaceRequest req;
  if (std::sscanf(text.c_str(), "eps=%d,n=%d", &req.eps_exp, &req.n) != 2 ||
      req.n < 4) {
    throw CLI::ValidationError("--surfaces", "expected 'eps=<exp>,n=<int>'");
  }
  return req;
}

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Flat key=value config file; keys are the long option names without the
// leading dashes. Values act as defaults, so command-line flags win.
void apply_config_file(const std::string& path, spcd::RunConfig& cfg,
                       std::string& m_rule, std::string& surfaces) {
  std::ifstream in(path);
  if (!in) {
    throw CLI::ValidationError("--config", "cannot read '" + path + "'");
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trimmed(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError(
          "--config", path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trimmed(text.substr(0, eq));
    const std::string value = trimmed(text.substr(eq + 1));
    try {
      if (key == "example") cfg.example = std::stoi(value);
      else if (key == "level") cfg.level = std::stoi(value);
      else if (key == "n0") cfg.n0 = std::stoi(value);
      else if (key == "levels") cfg.levels = std::stoi(value);
      else if (key == "eps-min-exp") cfg.eps_min_exp = std::stoi(value);
      else if (key == "eps-max-exp") cfg.eps_max_exp = std::stoi(value);
      else if (key == "workers") cfg.workers = std::stoi(value);
      else if (key == "out") cfg.out_dir = value;
      else if (key == "m-rule") m_rule = value;
      else if (key == "surfaces") surfaces = value;
      else {
        throw CLI::ValidationError(
            "--config", path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw CLI::ValidationError(
          "--config", path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parameter-uniform solver for singularly perturbed "
               "convection-diffusion problems with discontinuous initial "
               "data"};
  app.require_subcommand(1);

  spcd::RunConfig cfg;
  cfg.example = 0;  // must come from a flag or the config file
  std::string m_rule_text = "n";
  std::string surfaces_text;
  std::string config_path;

  // The config file provides defaults, so it is applied before CLI11
  // binds the flag values: pre-scan for --config.
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      config_path = argv[i + 1];
    } else if (arg.rfind("--config=", 0) == 0) {
      config_path = arg.substr(9);
    }
  }
  try {
    if (!config_path.empty()) {
      apply_config_file(config_path, cfg, m_rule_text, surfaces_text);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  CLI::App* run = app.add_subcommand(
      "run", "run a two-mesh study and emit table (and surface) files");
  std::string config_sink;
  run->add_option("--config", config_sink,
                  "key=value config file; command-line flags win");
  run->add_option("--example", cfg.example, "example id (1..5)")
      ->check(CLI::Range(1, 5));
  run->add_option("--level", cfg.level, "subtraction level (0 or 1)")
      ->check(CLI::Range(0, 1))
      ->capture_default_str();
  run->add_option("--n0", cfg.n0, "coarsest N (even, >= 4)")
      ->capture_default_str();
  run->add_option("--levels", cfg.levels, "number of table columns")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--eps-min-exp", cfg.eps_min_exp,
                  "smallest exponent e of the ladder eps = 2^-e")
      ->capture_default_str();
  run->add_option("--eps-max-exp", cfg.eps_max_exp, "largest exponent e")
      ->capture_default_str();
  run->add_option("--m-rule", m_rule_text, "'n' (M = N) or 'fixed:<int>'")
      ->capture_default_str();
  run->add_option("--out", cfg.out_dir, "output directory")
      ->capture_default_str();
  run->add_option("--surfaces", surfaces_text,
                  "also dump y/u node surfaces, e.g. eps=12,n=64");
  run->add_option("--workers", cfg.workers,
                  "worker thread count (0 = hardware)")
      ->capture_default_str();

  CLI::App* list =
      app.add_subcommand("list", "describe the five registered examples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      std::cout << spcd::list_examples();
      return 0;
    }
    cfg.m_rule = parse_m_rule(m_rule_text);
    if (!surfaces_text.empty()) cfg.surfaces = parse_surfaces(surfaces_text);
    const spcd::RunOutputs out = spcd::run_example(cfg);
    std::ostringstream table;
    spcd::write_table_markdown(out.report, table);
    std::cout << table.str() << '\n';
    for (const auto& file : out.files) {
      std::cout << "wrote " << file << '\n';
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
