#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "app/artifacts.hpp"
#include "app/commands.hpp"
#include "chainctl/errors.hpp"
#include "chainctl/io.hpp"

namespace chainctl::cli {

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal control of end-to-end entanglement in Heisenberg spin chains"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kArtifactVersion));

  struct Parsed {
    std::string config_path;
    std::map<std::string, std::string> flags;
  };
  std::map<std::string, Parsed> parsed;
  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, command_description(name));
    Parsed& p = parsed[name];
    sub->add_option("--config", p.config_path, "JSON configuration file");
    for (const auto& key : config_keys()) {
      sub->add_option("--" + std::string(key.name), p.flags[key.name], key.help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  const Parsed& p = parsed[command];
  try {
    RunConfig cfg = p.config_path.empty() ? RunConfig::empty()
                                          : RunConfig::parse(read_file(p.config_path), p.config_path);
    for (const auto& key : config_keys()) {
      if (chosen->count("--" + std::string(key.name)) > 0) cfg.set_flag(key.name, p.flags.at(key.name));
    }
    return run_command(command, cfg, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace chainctl::cli
