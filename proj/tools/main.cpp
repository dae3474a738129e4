#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mhdbox/config.hpp"
#include "mhdbox/errors.hpp"
#include "mhdbox/runner.hpp"
#include "mhdbox/selfcheck.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral incompressible MHD on the periodic box with "
               "dyadic-shell vorticity diagnostics"};
  app.require_subcommand(1);

  std::string config_path, resume_path, inspect_path, records_path, outdir_override;
  std::vector<double> eps_list;

  auto* run_cmd = app.add_subcommand("run", "integrate a configured run");
  run_cmd->add_option("config", config_path, "path to the JSON run configuration")
      ->required();
  run_cmd->add_option("--resume", resume_path, "checkpoint file to resume from");
  run_cmd->add_option("--outdir", outdir_override, "override the configured output directory");

  auto* inspect_cmd = app.add_subcommand("inspect", "print a snapshot header and norms");
  inspect_cmd->add_option("snapshot", inspect_path, "snapshot or checkpoint file")
      ->required();

  auto* analyze_cmd =
      app.add_subcommand("analyze", "recompute window reports from a records file");
  analyze_cmd->add_option("records", records_path, "records.tsv produced by run")
      ->required();
  analyze_cmd->add_option("--eps", eps_list, "window lengths to integrate over")
      ->required()
      ->expected(-1);

  auto* verify_cmd =
      app.add_subcommand("verify", "run the built-in identity and inequality probes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      mhdbox::RunConfig cfg = mhdbox::load_config(config_path);
      if (!outdir_override.empty()) cfg.outdir = outdir_override;
      return mhdbox::run(cfg, std::cout,
                         resume_path.empty()
                             ? std::nullopt
                             : std::optional<std::string>(resume_path));
    }
    if (*inspect_cmd) {
      return mhdbox::inspect_file(inspect_path, std::cout);
    }
    if (*analyze_cmd) {
      return mhdbox::analyze_records(records_path, eps_list, std::cout);
    }
    if (*verify_cmd) {
      return mhdbox::run_verification_probes(std::cout) ? mhdbox::kExitOk : 1;
    }
  } catch (const mhdbox::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return mhdbox::kExitConfigError;
  } catch (const mhdbox::SnapshotError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return mhdbox::kExitIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
