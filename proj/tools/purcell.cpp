#include "purcell/cli/sweep.hpp"
#include "purcell/cli/verify.hpp"

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <optional>
#include <string>

namespace {

purcell::cli::SweepConfig config_or_default(const std::string &path) {
  if (path.empty())
    return {};
  return purcell::cli::load_config(path);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Purcell factors of magnetic and electric dipoles in absorbing "
               "magneto-dielectrics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_path;

  auto *sweep = app.add_subcommand("sweep", "decay-rate sweep over frequency and radius");
  sweep->add_option("--config", config_path, "JSON sweep config")->required();
  sweep->add_option("--output", output_path, "CSV output file")->required();

  auto *dispersion = app.add_subcommand("dispersion", "eps, mu and n over the frequency grid");
  dispersion->add_option("--config", config_path, "JSON sweep config")->required();
  dispersion->add_option("--output", output_path, "CSV output file")->required();

  auto *radii = app.add_subcommand("radii", "averaging-radius conversion table");
  radii->add_option("--config", config_path, "JSON sweep config (default: example medium)");

  std::string suite_name = "all";
  bool vacuum = false;
  auto *verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("suite", suite_name, "all | duality | conventions | oracle | identities")
      ->check(CLI::IsMember({"all", "duality", "conventions", "oracle", "identities"}));
  verify->add_option("--config", config_path, "JSON sweep config (default: example medium)");
  verify->add_flag("--vacuum", vacuum, "replace the medium by vacuum");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    // --help and friends exit 0; usage errors share the error status.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*sweep) {
      const auto config = purcell::cli::load_config(config_path);
      purcell::cli::emit_csv(purcell::cli::run_sweep(config), output_path);
    } else if (*dispersion) {
      const auto config = purcell::cli::load_config(config_path);
      purcell::cli::emit_dispersion_csv(purcell::cli::run_dispersion(config), output_path);
    } else if (*radii) {
      purcell::cli::write_radii_table(std::cout, config_or_default(config_path));
    } else if (*verify) {
      const auto config = config_or_default(config_path);
      const auto results = purcell::cli::run_verify(
          purcell::cli::parse_suite(suite_name), config, {vacuum});
      return purcell::cli::write_verify_report(std::cout, results) ? 0 : 1;
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
