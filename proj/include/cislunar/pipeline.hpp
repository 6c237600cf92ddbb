#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cislunar/doppler.hpp"
#include "cislunar/io.hpp"
#include "cislunar/scenario.hpp"

namespace cislunar {

// All link series for a scenario, in build_links order.
struct SimulatedLinks {
  std::vector<DopplerSeries> isl;
  std::vector<DopplerSeries> gs;
};

SimulatedLinks simulate_links(const Scenario& sc);

// Optional per-invocation overrides of scenario-provided settings.
struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> gmm_components;
  std::optional<std::size_t> histogram_bins;
  std::optional<double> min_elevation_deg;
};

// Each stage writes its outputs under out_dir and throws on failure; the
// CLI wrapper turns exceptions into a nonzero exit with a JSON diagnostic.
void run_simulate(const Scenario& sc, const std::filesystem::path& out_dir, const RunOverrides& ovr = {});
void run_fit(const std::filesystem::path& sim_dir, const std::filesystem::path& out_dir, const RunOverrides& ovr = {});
void run_evaluate(const std::filesystem::path& sim_dir, const std::filesystem::path& fit_dir,
                  const std::filesystem::path& out_dir);
void run_timeseries(const std::filesystem::path& sim_dir, const std::string& link_id,
                    const std::filesystem::path& out_path);

}  // namespace cislunar
