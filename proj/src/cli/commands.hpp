#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace ctherm::cli {

struct Context {
  std::filesystem::path base;  // directory of the config file
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

struct Artifact {
  std::filesystem::path path;
  std::string content;
};

/// Everything a command produces. Nothing is written until the command
/// returns, so schema errors never leave partial files behind.
struct Outcome {
  int code = kExitOk;
  std::string primary;                               // report or table
  std::optional<std::filesystem::path> primary_path; // from output.path
  std::vector<Artifact> extra;
  std::string note;  // one line for stderr
};

Outcome cmd_check_closed(const Node& root, const Context& ctx);
Outcome cmd_simulate(const Node& root, const Context& ctx);
enum class SurfaceMode { Shifted, Legendre };
Outcome cmd_surface(const Node& root, const Context& ctx, SurfaceMode mode);
Outcome cmd_admissible(const Node& root, const Context& ctx);
Outcome cmd_metric(const Node& root, const Context& ctx);
Outcome cmd_action(const Node& root, const Context& ctx);
Outcome cmd_curvature(const Node& root, const Context& ctx);
Outcome cmd_vdw(const Node& root, const Context& ctx);

/// IEEE doubles with 17 significant digits, comma separated, LF endings.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  void row(const std::vector<double>& values);
  const std::string& str() const noexcept { return text_; }

 private:
  std::size_t width_;
  std::string text_;
};

std::string format_double(double v);

}  // namespace ctherm::cli
