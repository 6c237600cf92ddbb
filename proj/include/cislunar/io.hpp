#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cislunar/doppler.hpp"
#include "cislunar/gmm.hpp"
#include "cislunar/scenario.hpp"

namespace cislunar {

// Shortest decimal form that round-trips the exact double.
std::string format_double(double v);

// Writes via a temp file in the same directory plus rename, so readers never
// observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

// DopplerSeries CSV, header "t_s,ppm,visible", visible as 0/1.
std::string doppler_series_to_csv(const DopplerSeries& series);
DopplerSeries doppler_series_from_csv(const std::string& text, std::string link_id);

std::string isl_series_filename(const std::string& link_id);
std::string gs_series_filename(const std::string& link_id);

// Fitted models as an ordered JSON map link_id -> {weights, means, variances};
// failed links carry {"error": ...} instead. The pooled entry is keyed "ALL".
std::string models_to_json(const std::vector<std::pair<std::string, LinkFit>>& fits);
std::vector<std::pair<std::string, LinkFit>> models_from_json(const std::string& text);

struct MetricsRow {
  std::string link_id;
  double wmrd = 0.0;
  double kl_divergence = 0.0;
};

// CSV with header "link_id,wmrd,kl_divergence".
std::string metrics_to_csv(const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> metrics_from_csv(const std::string& text);

// Run manifest: scenario hash, physical constants, sampling facts, seed,
// link ids in simulation order and the scenario itself.
struct RunManifest {
  std::string scenario_hash;
  std::uint64_t seed = 1;
  std::size_t samples_per_link = 0;
  std::vector<std::string> isl_links;
  std::vector<std::string> gs_links;
  Scenario scenario;
};

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& text);

// FNV-1a 64-bit over the canonical serialized scenario, hex encoded.
std::string scenario_hash(const Scenario& sc);

}  // namespace cislunar
