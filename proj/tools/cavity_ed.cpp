// cavity_ed: command-line front end.
//   cavity_ed run <config> [--out-dir DIR]      (or --preset NAME)
//   cavity_ed validate <config>                 (or --preset NAME)
//   cavity_ed presets list | presets show <name>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cavityed/config.hpp"
#include "cavityed/error.hpp"
#include "cavityed/presets.hpp"
#include "cavityed/runner.hpp"

using namespace cavityed;

namespace {

std::string load_text(const std::string& path, const std::string& preset) {
  if (!preset.empty()) {
    auto p = find_preset(preset);
    if (!p) throw ConfigurationError("unknown preset '" + preset + "' (try: presets list)");
    return std::string(p->text);
  }
  if (path.empty()) throw ConfigurationError("give a config file or --preset NAME");
  std::ifstream f(path);
  if (!f) throw ConfigurationError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact diagonalization of few-body cavity QED models"};
  app.set_version_flag("--version", std::string(CAVITYED_VERSION));
  app.require_subcommand(1);

  std::string config_path, preset, out_dir = ".";
  bool quiet = false;

  auto* run_cmd = app.add_subcommand("run", "run an experiment; writes CSV and JSON manifest");
  run_cmd->add_option("config", config_path, "config file");
  run_cmd->add_option("--preset", preset, "use a built-in preset instead of a file");
  run_cmd->add_option("-o,--out-dir", out_dir, "directory for relative output paths");
  run_cmd->add_flag("-q,--quiet", quiet, "no progress output");

  auto* validate_cmd = app.add_subcommand("validate", "parse a config and print it fully resolved");
  validate_cmd->add_option("config", config_path, "config file");
  validate_cmd->add_option("--preset", preset, "validate a built-in preset");

  auto* presets_cmd = app.add_subcommand("presets", "list or show built-in presets");
  presets_cmd->require_subcommand(1);
  presets_cmd->add_subcommand("list", "list preset names");
  std::string show_name;
  auto* show_cmd = presets_cmd->add_subcommand("show", "print a preset config");
  show_cmd->add_option("name", show_name, "preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (presets_cmd->parsed()) {
    if (show_cmd->parsed()) {
      auto p = find_preset(show_name);
      if (!p) {
        std::cerr << "unknown preset '" << show_name << "'\n";
        return kExitConfig;
      }
      std::cout << p->text;
      return kExitOk;
    }
    for (const auto& p : presets()) std::cout << p.name << "  " << p.summary << "\n";
    return kExitOk;
  }

  RunConfig config;
  try {
    config = parse_config(load_text(config_path, preset));
    threads_from_env();
  } catch (const std::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }

  if (validate_cmd->parsed()) {
    std::cout << serialize_config(config);
    return kExitOk;
  }
  std::ostringstream sink;
  return run(config, out_dir, quiet ? static_cast<std::ostream&>(sink) : std::cerr);
}
