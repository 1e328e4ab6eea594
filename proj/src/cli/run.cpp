#include <fstream>
#include <functional>
#include <map>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "ctherm/cli.hpp"

namespace ctherm::cli {

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

struct Command {
  const char* name;
  const char* help;
  bool needs_config;
  bool takes_tol;
  bool takes_seed;
  std::function<Outcome(const Node&, const Context&)> run;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> table{
      {"check-closed", "Test whether an entropy form is closed on sample points", true, true, true, cmd_check_closed},
      {"simulate", "Integrate a thermoelastic or ferroelectric model and write the trace", true, false, false,
       cmd_simulate},
      {"surface", "Sample the shifted constitutive surface on a grid", true, false, false,
       [](const Node& n, const Context& c) { return cmd_surface(n, c, SurfaceMode::Shifted); }},
      {"shift", "Same as surface", true, false, false,
       [](const Node& n, const Context& c) { return cmd_surface(n, c, SurfaceMode::Shifted); }},
      {"legendre", "Sample the Legendre surface of U on a grid", true, false, false,
       [](const Node& n, const Context& c) { return cmd_surface(n, c, SurfaceMode::Legendre); }},
      {"admissible", "Check the production rate sign along a sampled curve", true, true, false, cmd_admissible},
      {"metric", "Hessian metric of U and its determinant", true, false, false, cmd_metric},
      {"action", "Integrate an entropy form along a sampled curve", true, false, false, cmd_action},
      {"curvature", "Curvature of a Gibbs connection on sample points", true, false, true, cmd_curvature},
      {"vdw", "Van der Waals preset: spinodal and surface table", false, true, false, cmd_vdw},
  };
  return table;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  f << content;
  if (!f) throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
}

int execute(const Command& cmd, const Flags& flags, std::ostream& out, std::ostream& err) {
  if (flags.tol && !cmd.takes_tol) {
    err << fmt::format("error: --tol is not used by {}\n", cmd.name);
    return kExitError;
  }
  if (flags.seed && !cmd.takes_seed) {
    err << fmt::format("error: --seed is not used by {}\n", cmd.name);
    return kExitError;
  }
  if (flags.tol && !(*flags.tol > 0)) {
    err << "error: --tol must be positive\n";
    return kExitError;
  }
  if (cmd.needs_config && flags.config.empty()) {
    err << fmt::format("error: {} needs --config PATH\n", cmd.name);
    return kExitError;
  }

  Outcome outcome;
  try {
    Context ctx;
    ctx.tol = flags.tol;
    ctx.seed = flags.seed;
    json doc = json::object();
    if (!flags.config.empty()) {
      const std::filesystem::path path = flags.config;
      doc = load_document(path);
      ctx.base = path.parent_path();
    }
    outcome = cmd.run(Node(doc, ""), ctx);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    for (const auto& a : outcome.extra) write_file(a.path, a.content);
    if (!flags.out.empty() && flags.out != "-") write_file(flags.out, outcome.primary);
    else if (flags.out.empty() && outcome.primary_path) write_file(*outcome.primary_path, outcome.primary);
    else out << outcome.primary;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  if (!outcome.note.empty()) err << outcome.note << "\n";
  return outcome.code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contact-geometric thermodynamics toolkit", "ctherm"};
  app.require_subcommand(1);
  Flags flags;
  std::map<const CLI::App*, const Command*> by_app;
  for (const auto& cmd : commands()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    auto* config = sub->add_option("--config", flags.config, "JSON run config");
    if (cmd.needs_config) config->required();
    sub->add_option("--out", flags.out, "Write the main output here instead of stdout (or output.path)");
    sub->add_option("--tol", flags.tol, "Tolerance override");
    sub->add_option("--seed", flags.seed, "Seed for sample points");
    by_app[sub] = &cmd;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }
  for (const auto& [sub, cmd] : by_app)
    if (sub->parsed()) return execute(*cmd, flags, out, err);
  return kExitError;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"ctherm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ctherm::cli
