#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qhe/errors.hpp"
#include "qhe/parallel.hpp"
#include "qhe/report/commands.hpp"
#include "qhe/report/config.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-current spectral toolkit for quantum Hall strips and cylinders"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--config", flags.config, "TOML run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", flags.out, "Output directory");
  app.add_option("--threads", flags.threads, "Worker threads (0 = hardware)");
  app.add_option("--seed", flags.seed, "Seed for packet profile jitter");

  using Command = std::function<int(const qhe::report::RunConfig&)>;
  const std::map<std::string, std::pair<std::string, Command>> commands = {
      {"dispersion", {"Band curves, inverse images and gap tests", qhe::report::cmd_dispersion}},
      {"current", {"Edge currents of wave packets against their bounds", qhe::report::cmd_current}},
      {"cylinder", {"Cylinder spectrum, packet currents and perturbed comparison",
                    qhe::report::cmd_cylinder}},
      {"verify", {"Run the invariant suite and emit verdicts", qhe::report::cmd_verify}},
      {"scaling", {"Field sweeps with fitted log-log slopes", qhe::report::cmd_scaling}},
  };
  for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.first);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    qhe::report::RunConfig config =
        flags.config.empty() ? qhe::report::parse_config("", "defaults")
                             : qhe::report::load_config(flags.config);
    if (flags.out) config.out_dir = *flags.out;
    if (flags.threads) config.threads = *flags.threads;
    if (flags.seed) config.seed = *flags.seed;
    qhe::set_thread_count(config.threads);

    const std::string name = app.get_subcommands().front()->get_name();
    const int code = commands.at(name).second(config);
    std::cout << name << ": " << (code == 0 ? "pass" : "fail") << " (" << config.out_dir << ")\n";
    return code;
  } catch (const qhe::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qhe::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const qhe::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
