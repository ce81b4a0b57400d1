#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "eitmono/cli.hpp"
#include "eitmono/config.hpp"

namespace {

struct GlobalArgs {
  std::string config_path;
  eitmono::CliOverrides overrides;
};

void add_common_options(CLI::App* cmd, GlobalArgs& args) {
  cmd->add_option("-c,--config", args.config_path, "run configuration file")->required();
  cmd->add_option("--mesh-level", args.overrides.mesh_level,
                  "override the refinement level from the config");
  cmd->add_option("--out", args.overrides.out_dir, "override the output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"electrode-model simulation and definiteness-based anomaly detection"};
  app.require_subcommand(1);

  GlobalArgs args;

  CLI::App* mesh = app.add_subcommand("mesh", "build the disk mesh and dump it");
  add_common_options(mesh, args);

  CLI::App* simulate =
      app.add_subcommand("simulate", "write measurement matrices for the configured phantom");
  add_common_options(simulate, args);
  simulate->add_option("--beta", args.overrides.beta,
                       "modulation strength (number or 'max') for test-region matrices");
  simulate->add_flag("--symmetrize", args.overrides.symmetrize,
                     "average each matrix with its transpose before writing");

  CLI::App* test =
      app.add_subcommand("test", "run the definiteness test on the configured regions");
  add_common_options(test, args);
  test->add_option("--beta", args.overrides.beta, "modulation strength (number or 'max')");
  test->add_option("--delta", args.overrides.delta, "regularization level (number or 'auto')");
  test->add_flag("--symmetrize", args.overrides.symmetrize,
                 "average each matrix with its transpose before testing");

  CLI::App* scan = app.add_subcommand("scan", "sweep a ball grid over the domain");
  add_common_options(scan, args);
  scan->add_option("--beta", args.overrides.beta, "modulation strength (number or 'max')");
  scan->add_option("--delta", args.overrides.delta, "regularization level (number or 'auto')");
  scan->add_option("--threads", args.overrides.threads, "worker threads for the sweep")
      ->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand("verify", "run model self-checks on the configuration");
  add_common_options(verify, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints help or the usage error
    return rc == 0 ? 0 : 2;
  }

  try {
    const eitmono::RunConfig config = eitmono::load_config(args.config_path);
    if (mesh->parsed()) return eitmono::cmd_mesh(config, args.overrides);
    if (simulate->parsed()) return eitmono::cmd_simulate(config, args.overrides);
    if (test->parsed()) return eitmono::cmd_test(config, args.overrides);
    if (scan->parsed()) return eitmono::cmd_scan(config, args.overrides);
    if (verify->parsed()) return eitmono::cmd_verify(config, args.overrides);
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
