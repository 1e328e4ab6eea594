#pragma once

// Golden CLI cases. Each run copies tests/golden/configs into a fresh
// directory so relative output paths never touch the source tree.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "ctherm/cli.hpp"

#ifndef CTHERM_SOURCE_DIR
#error "CTHERM_SOURCE_DIR must be defined"
#endif

namespace golden {

namespace fs = std::filesystem;

struct Case {
  std::string name;     // config stem and golden file stem
  std::string command;  // subcommand
  int exit_code;
  std::vector<std::string> extra;  // extra outputs, relative to the config dir
};

inline void PrintTo(const Case& c, std::ostream* os) { *os << c.name; }

inline const std::vector<Case>& cases() {
  static const std::vector<Case> all{
      {"check_closed_thermoelastic", "check-closed", 0, {}},
      {"check_closed_rotation", "check-closed", 2, {}},
      {"check_closed_missing", "check-closed", 1, {}},
      {"simulate_fixed_point", "simulate", 0, {}},
      {"simulate_linear_F", "simulate", 0, {}},
      {"simulate_ferroelectric_harmonic", "simulate", 0, {}},
      {"simulate_domain_exit", "simulate", 3, {}},
      {"surface_shifted", "surface", 0, {}},
      {"legendre_vdw", "legendre", 0, {}},
      {"admissible_forward", "admissible", 0, {"out/forward_rates.csv"}},
      {"admissible_reversed", "admissible", 2, {}},
      {"admissible_reversible", "admissible", 0, {}},
      {"metric_vdw", "metric", 0, {}},
      {"action_loop", "action", 0, {}},
      {"action_thermoelastic", "action", 0, {}},
      {"curvature_gibbs", "curvature", 0, {}},
      {"curvature_exact", "curvature", 0, {}},
      {"vdw_preset", "vdw", 0, {"out/vdw_surface.csv"}},
  };
  return all;
}

inline fs::path source_dir() { return CTHERM_SOURCE_DIR; }
inline fs::path config_dir() { return source_dir() / "tests" / "golden" / "configs"; }
inline fs::path expected_dir() { return source_dir() / "tests" / "golden" / "expected"; }

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

/// A fresh copy of the config directory under the system temp dir.
inline fs::path scratch_copy() {
  static std::atomic<int> counter{0};
  const fs::path dir = fs::temp_directory_path() /
                       ("ctherm_golden_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::copy(config_dir(), dir, fs::copy_options::recursive);
  return dir;
}

struct Run {
  int exit_code = -1;
  std::string out;
  std::string err;
  std::map<std::string, std::string> files;  // extra outputs by relative path
};

inline Run run_args(const std::vector<std::string>& args) {
  Run r;
  std::ostringstream out, err;
  r.exit_code = ctherm::cli::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

inline Run run_case(const Case& c) {
  const fs::path dir = scratch_copy();
  Run r = run_args({c.command, "--config", (dir / (c.name + ".json")).string()});
  for (const auto& rel : c.extra) r.files[rel] = fs::exists(dir / rel) ? read_file(dir / rel) : "<missing>";
  fs::remove_all(dir);
  return r;
}

/// Golden file names: <name>.out for stdout, <name>.<basename> for extras.
inline fs::path expected_path(const Case& c, const std::string& rel = {}) {
  return expected_dir() / (rel.empty() ? c.name + ".out" : c.name + "." + fs::path(rel).filename().string());
}

}  // namespace golden
