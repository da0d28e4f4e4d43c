// main.cpp — unitint command-line entry point
#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "unitint/errors.hpp"

int main(int argc, char** argv) {
  using namespace unitint::cli;

  CLI::App app{"Unitary integration of three-level dynamics"};
  app.require_subcommand(1);

  std::string config, out, path, pipeline;
  double tol = 0.0;
  std::size_t samples = 0;

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--config", config, "JSON run configuration")->required();
    sub->add_option("--pipeline", pipeline, "su3 | su4 | oracle")
        ->check(CLI::IsMember({"su3", "su4", "oracle"}));
    sub->add_option("--tol", tol, "integrator tolerance in [1e-12, 1e-3]");
    sub->add_option("--samples", samples, "output samples (>= 2)");
  };

  auto* evolve = app.add_subcommand("evolve", "integrate one configuration and write a CSV");
  add_run_flags(evolve);
  evolve->add_option("--out", out, "output CSV")->required();

  auto* gph = app.add_subcommand("gphase", "geometric phase of an angle path");
  gph->add_option("--path", path, "CSV with t,theta1,theta2,eps1,eps2")->required();
  gph->add_option("--out", out, "output JSON")->required();

  auto* sweep = app.add_subcommand("sweep", "run a parameter grid concurrently");
  add_run_flags(sweep);
  sweep->add_option("--out", out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  Overrides o;
  try {
    if (!pipeline.empty()) o.pipeline = parse_pipeline(pipeline);
  } catch (const unitint::ConfigInvalid& e) {
    return exit_code_for(e, std::cerr);
  }
  if (tol != 0.0) o.tol = tol;
  if (samples != 0) o.samples = samples;

  if (*evolve) return cmd_evolve(config, out, o, std::cerr);
  if (*gph) return cmd_gphase(path, out, std::cerr);
  return cmd_sweep(config, out, o, std::cerr);
}
