// Command-line front end: simulate | fit | evaluate | timeseries | run-all.
// Exit code 0 on success; failures print one machine-readable JSON line on
// stderr.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cislunar/pipeline.hpp"
#include "cislunar/scenario.hpp"
#include "json.hpp"

namespace {

struct CommonArgs {
  std::string scenario_path;
  std::string out_dir;
  std::string sim_dir;
  std::string fit_dir;
  std::string link_id;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> k;
  std::optional<std::size_t> bins;
  std::optional<double> min_elevation;
};

cislunar::Scenario load(const CommonArgs& args) {
  if (args.scenario_path.empty()) return cislunar::default_scenario();
  return cislunar::load_scenario_file(args.scenario_path);
}

cislunar::RunOverrides overrides(const CommonArgs& args) {
  cislunar::RunOverrides ovr;
  ovr.seed = args.seed;
  ovr.gmm_components = args.k;
  ovr.histogram_bins = args.bins;
  ovr.min_elevation_deg = args.min_elevation;
  return ovr;
}

void report_error(const std::string& command, const std::exception& e) {
  nlohmann::ordered_json diag{{"status", "error"}, {"command", command}, {"message", e.what()}};
  std::cerr << diag.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cislunar constellation Doppler analysis"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string active;

  auto* simulate = app.add_subcommand("simulate", "Propagate the constellation and write per-link Doppler CSVs");
  simulate->add_option("--scenario", args.scenario_path, "Scenario JSON path (omit for the built-in default)");
  simulate->add_option("--out", args.out_dir, "Output directory")->required();
  simulate->add_option("--seed", args.seed, "RNG seed recorded for downstream fitting");
  simulate->add_option("--min-elevation", args.min_elevation, "Ground-station elevation mask [deg]");

  auto* fit = app.add_subcommand("fit", "Fit per-link and pooled Gaussian mixtures to simulated Doppler data");
  fit->add_option("--sim", args.sim_dir, "Directory produced by simulate")->required();
  fit->add_option("--out", args.out_dir, "Output directory")->required();
  fit->add_option("--seed", args.seed, "RNG seed (defaults to the simulate manifest seed)");
  fit->add_option("--k", args.k, "Mixture components");
  fit->add_option("--bins", args.bins, "Histogram bins for curve export");

  auto* evaluate = app.add_subcommand("evaluate", "Score fitted models against histogram ground truth");
  evaluate->add_option("--sim", args.sim_dir, "Directory produced by simulate")->required();
  evaluate->add_option("--fit", args.fit_dir, "Directory produced by fit")->required();
  evaluate->add_option("--out", args.out_dir, "Output directory")->required();

  auto* timeseries = app.add_subcommand("timeseries", "Export one link's t/ppm/visible series");
  timeseries->add_option("--sim", args.sim_dir, "Directory produced by simulate")->required();
  timeseries->add_option("--link", args.link_id, "Link id, e.g. LLO-1_LLO-21 or LLO-1_GS1")->required();
  timeseries->add_option("--out", args.out_dir, "Output CSV path")->required();

  auto* run_all = app.add_subcommand("run-all", "simulate + fit + evaluate under one output root");
  run_all->add_option("--scenario", args.scenario_path, "Scenario JSON path (omit for the built-in default)");
  run_all->add_option("--out", args.out_dir, "Output root directory")->required();
  run_all->add_option("--seed", args.seed, "RNG seed");
  run_all->add_option("--k", args.k, "Mixture components");
  run_all->add_option("--bins", args.bins, "Histogram bins");
  run_all->add_option("--min-elevation", args.min_elevation, "Ground-station elevation mask [deg]");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      active = "simulate";
      cislunar::run_simulate(load(args), args.out_dir, overrides(args));
    } else if (fit->parsed()) {
      active = "fit";
      cislunar::run_fit(args.sim_dir, args.out_dir, overrides(args));
    } else if (evaluate->parsed()) {
      active = "evaluate";
      cislunar::run_evaluate(args.sim_dir, args.fit_dir, args.out_dir);
    } else if (timeseries->parsed()) {
      active = "timeseries";
      cislunar::run_timeseries(args.sim_dir, args.link_id, args.out_dir);
    } else if (run_all->parsed()) {
      active = "run-all";
      const std::filesystem::path root = args.out_dir;
      const cislunar::RunOverrides ovr = overrides(args);
      cislunar::run_simulate(load(args), root / "sim", ovr);
      cislunar::run_fit(root / "sim", root / "fit", ovr);
      cislunar::run_evaluate(root / "sim", root / "fit", root / "eval");
    }
  } catch (const std::exception& e) {
    report_error(active, e);
    return 1;
  }
  return 0;
}
