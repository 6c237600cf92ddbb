#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cislunar/doppler.hpp"
#include "cislunar/orbit.hpp"

namespace cislunar {

struct Satellite {
  std::string label;
  OrbitalElements elements;

  bool operator==(const Satellite&) const = default;
};

struct FitSettings {
  std::size_t max_iterations = 500;
  double tolerance = 1e-8;
  std::size_t restarts = 5;

  bool operator==(const FitSettings&) const = default;
};

enum class IslTopology { kStar, kAllPairs };

// Complete run description: constellation, ground segment, sampling grid and
// fitting configuration.
struct Scenario {
  std::vector<Satellite> satellites;
  std::vector<GroundStation> ground_stations;
  double duration_s = 86400.0;
  double sample_interval_s = 10.0;
  double carrier_frequency_hz = 20.0e9;
  std::size_t gmm_components = 5;
  FitSettings fit;
  std::size_t histogram_bins = 4000;
  std::string reference_satellite = "LLO-1";
  double min_elevation_deg = 0.0;
  IslTopology isl_topology = IslTopology::kStar;

  bool operator==(const Scenario&) const = default;

  std::size_t samples_per_link() const;
  const Satellite& find(const std::string& label) const;

  // Throws std::invalid_argument with a field path on any violation.
  void validate() const;
};

// 21 satellites LLO-1..LLO-21 at a = 1837.4 km, e = 0, raan 90, argp 0,
// nu0 0, inclinations 80..100 step 1; one station at the lunar south pole.
Scenario default_scenario();

// Parses a JSON document; an empty document yields default_scenario() and
// omitted fields keep their defaults. Violations are reported with the
// offending field path; duplicate satellite labels are rejected.
Scenario load_scenario(const std::string& text);
Scenario load_scenario_file(const std::filesystem::path& path);

std::string serialize_scenario(const Scenario& sc);

// Planned links: ISL label pairs plus (satellite label, station index) pairs.
struct LinkPlan {
  std::vector<std::pair<std::string, std::string>> isl;
  std::vector<std::pair<std::string, std::size_t>> gs;
};

LinkPlan build_links(const Scenario& sc);

std::string isl_link_id(const std::string& a, const std::string& b);
std::string gs_link_id(const std::string& sat, std::size_t gs_index);

}  // namespace cislunar
