#include "skewfbm/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

namespace {

struct Flags {
  std::string config_file;
  std::map<std::string, std::string> values;
  bool figure_grid = false;
};

void add_run_flags(CLI::App& cmd, Flags& flags) {
  cmd.add_option("--config", flags.config_file, "key=value config file (flags take precedence)");
  const std::pair<const char*, const char*> options[] = {
      {"hurst", "Hurst parameter H in [0.5, 1)"},
      {"alpha", "skew weight alpha in (0, 1)"},
      {"x0", "initial condition"},
      {"horizon", "time horizon T"},
      {"steps", "number of grid steps N"},
      {"seed", "random seed"},
      {"n-list", "comma-separated mollification indices"},
      {"generator", "cholesky or circulant"},
      {"out", "output directory"},
      {"gamma", "Hoelder exponent for the fractional-bound check"},
      {"order-tilde", "order for the fractional-bound check"},
  };
  for (const auto& [name, help] : options) {
    cmd.add_option(std::string("--") + name, flags.values[name], help);
  }
}

skewfbm::cli::RunConfig resolve(const CLI::App& cmd, const Flags& flags) {
  skewfbm::cli::RunConfig config;
  if (!flags.config_file.empty()) config = skewfbm::cli::load_config_file(flags.config_file, config);
  for (const auto& [name, value] : flags.values) {
    if (cmd.get_option("--" + name)->count() > 0) skewfbm::cli::apply_setting(config, name, value);
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace skewfbm::cli;
  CLI::App app{"Pathwise simulation of dx = sigma(x) dB^H with a two-level skew coefficient"};
  app.require_subcommand(1);

  Flags fbm_flags, sim_flags, conv_flags, verify_flags;
  auto* fbm = app.add_subcommand("fbm", "sample a driver path, write CSV + SVG");
  add_run_flags(*fbm, fbm_flags);
  auto* sim = app.add_subcommand("simulate", "exact and mollified solutions, write CSV + SVG");
  add_run_flags(*sim, sim_flags);
  sim->add_flag("--figure-grid", sim_flags.figure_grid, "emit the full (H, alpha) figure grid");
  auto* conv = app.add_subcommand("converge", "sup-error of the mollified scheme versus n");
  add_run_flags(*conv, conv_flags);
  auto* verify = app.add_subcommand("verify", "run the property checks, exit 0 iff all pass");
  add_run_flags(*verify, verify_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (fbm->parsed()) return cmd_fbm(resolve(*fbm, fbm_flags), std::cout);
    if (sim->parsed()) {
      RunConfig config = resolve(*sim, sim_flags);
      if (sim_flags.figure_grid) config.figure_grid = true;
      return cmd_simulate(config, std::cout);
    }
    if (conv->parsed()) return cmd_converge(resolve(*conv, conv_flags), std::cout);
    if (verify->parsed()) return cmd_verify(resolve(*verify, verify_flags), std::cout);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
