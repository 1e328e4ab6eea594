#pragma once

// Command-line front end. run_cli is the whole program minus process setup,
// so tests can drive it with string streams.

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctherm::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;  // not closed / not admissible
inline constexpr int kExitDomain = 3;    // simulation left the domain; partial trace written

/// Schema or content error in a config document; `path` is dotted (a.b.c).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctherm::cli
