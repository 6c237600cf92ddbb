#include "cislunar/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "cislunar/constants.hpp"
#include "json.hpp"

namespace cislunar {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw std::invalid_argument(path + ": " + message);
}

double as_number(const Json& node, const std::string& path) {
  if (!node.is_number()) fail(path, "expected a number");
  return node.get<double>();
}

std::size_t as_count(const Json& node, const std::string& path) {
  if (!node.is_number_unsigned()) fail(path, "expected a non-negative integer");
  return node.get<std::size_t>();
}

std::string as_string(const Json& node, const std::string& path) {
  if (!node.is_string()) fail(path, "expected a string");
  return node.get<std::string>();
}

void reject_unknown_keys(const Json& node, const std::string& path, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : node.items()) {
    if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) == known.end())
      fail(path.empty() ? key : path + "." + key, "unknown field");
  }
}

OrbitalElements default_element_template() {
  OrbitalElements el;
  el.semi_major_axis_km = 1837.4;
  el.eccentricity = 0.0;
  el.inclination_deg = 90.0;
  el.raan_deg = 90.0;
  el.arg_perigee_deg = 0.0;
  el.true_anomaly_deg = 0.0;
  return el;
}

Satellite parse_satellite(const Json& node, const std::string& path) {
  if (!node.is_object()) fail(path, "expected an object");
  reject_unknown_keys(node, path,
                      {"label", "semi_major_axis_km", "eccentricity", "inclination_deg", "raan_deg",
                       "arg_perigee_deg", "true_anomaly_deg"});
  if (!node.contains("label")) fail(path + ".label", "required field missing");

  Satellite sat;
  sat.label = as_string(node.at("label"), path + ".label");
  sat.elements = default_element_template();
  if (node.contains("semi_major_axis_km"))
    sat.elements.semi_major_axis_km = as_number(node.at("semi_major_axis_km"), path + ".semi_major_axis_km");
  if (node.contains("eccentricity")) sat.elements.eccentricity = as_number(node.at("eccentricity"), path + ".eccentricity");
  if (node.contains("inclination_deg"))
    sat.elements.inclination_deg = as_number(node.at("inclination_deg"), path + ".inclination_deg");
  if (node.contains("raan_deg")) sat.elements.raan_deg = as_number(node.at("raan_deg"), path + ".raan_deg");
  if (node.contains("arg_perigee_deg"))
    sat.elements.arg_perigee_deg = as_number(node.at("arg_perigee_deg"), path + ".arg_perigee_deg");
  if (node.contains("true_anomaly_deg"))
    sat.elements.true_anomaly_deg = as_number(node.at("true_anomaly_deg"), path + ".true_anomaly_deg");
  return sat;
}

GroundStation parse_station(const Json& node, const std::string& path) {
  if (!node.is_object()) fail(path, "expected an object");
  reject_unknown_keys(node, path, {"latitude_deg", "longitude_deg", "radius_km"});
  GroundStation gs{-90.0, 0.0, kMoonRadiusKm};
  if (node.contains("latitude_deg")) gs.latitude_deg = as_number(node.at("latitude_deg"), path + ".latitude_deg");
  if (node.contains("longitude_deg")) gs.longitude_deg = as_number(node.at("longitude_deg"), path + ".longitude_deg");
  if (node.contains("radius_km")) gs.radius_km = as_number(node.at("radius_km"), path + ".radius_km");
  return gs;
}

}  // namespace

std::size_t Scenario::samples_per_link() const {
  return static_cast<std::size_t>(std::floor(duration_s / sample_interval_s)) + 1;
}

const Satellite& Scenario::find(const std::string& label) const {
  for (const auto& sat : satellites) {
    if (sat.label == label) return sat;
  }
  throw std::invalid_argument("Scenario: unknown satellite label " + label);
}

void Scenario::validate() const {
  if (satellites.empty()) fail("satellites", "at least one satellite required");
  std::unordered_set<std::string> labels;
  for (std::size_t i = 0; i < satellites.size(); ++i) {
    const std::string path = "satellites[" + std::to_string(i) + "]";
    if (satellites[i].label.empty()) fail(path + ".label", "must be non-empty");
    if (!labels.insert(satellites[i].label).second) fail(path + ".label", "duplicate label " + satellites[i].label);
    try {
      satellites[i].elements.validate();
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
  }
  if (!labels.contains(reference_satellite))
    fail("reference_satellite", "label " + reference_satellite + " not present in satellites");
  for (std::size_t i = 0; i < ground_stations.size(); ++i) {
    try {
      ground_stations[i].validate();
    } catch (const std::exception& e) {
      fail("ground_stations[" + std::to_string(i) + "]", e.what());
    }
  }
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) fail("duration_s", "must be positive");
  if (!(sample_interval_s > 0.0) || !std::isfinite(sample_interval_s)) fail("sample_interval_s", "must be positive");
  if (sample_interval_s > duration_s) fail("sample_interval_s", "must not exceed duration_s");
  if (!(carrier_frequency_hz > 0.0) || !std::isfinite(carrier_frequency_hz)) fail("carrier_frequency_hz", "must be positive");
  if (gmm_components == 0) fail("gmm_components", "must be at least 1");
  if (histogram_bins == 0) fail("histogram_bins", "must be at least 1");
  if (fit.max_iterations == 0) fail("fit.max_iterations", "must be at least 1");
  if (!(fit.tolerance > 0.0) || !std::isfinite(fit.tolerance)) fail("fit.tolerance", "must be positive");
  if (fit.restarts == 0) fail("fit.restarts", "must be at least 1");
  if (!std::isfinite(min_elevation_deg) || min_elevation_deg < -90.0 || min_elevation_deg > 90.0)
    fail("min_elevation_deg", "must be in [-90,90]");
}

Scenario default_scenario() {
  Scenario sc;
  sc.satellites.reserve(21);
  for (int i = 0; i < 21; ++i) {
    Satellite sat;
    sat.label = "LLO-" + std::to_string(i + 1);
    sat.elements = default_element_template();
    sat.elements.inclination_deg = 80.0 + static_cast<double>(i);
    sc.satellites.push_back(std::move(sat));
  }
  sc.ground_stations.push_back(GroundStation{-90.0, 0.0, kMoonRadiusKm});
  return sc;
}

Scenario load_scenario(const std::string& text) {
  const auto non_space = text.find_first_not_of(" \t\r\n");
  Scenario sc = default_scenario();
  if (non_space == std::string::npos) {
    sc.validate();
    return sc;
  }

  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("scenario: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("scenario: top-level document must be an object");
  reject_unknown_keys(doc, "",
                      {"satellites", "ground_stations", "duration_s", "sample_interval_s", "carrier_frequency_hz",
                       "gmm_components", "fit", "histogram_bins", "reference_satellite", "min_elevation_deg",
                       "isl_topology"});

  if (doc.contains("satellites")) {
    const Json& arr = doc.at("satellites");
    if (!arr.is_array()) fail("satellites", "expected an array");
    sc.satellites.clear();
    for (std::size_t i = 0; i < arr.size(); ++i)
      sc.satellites.push_back(parse_satellite(arr[i], "satellites[" + std::to_string(i) + "]"));
    if (!doc.contains("reference_satellite") && !sc.satellites.empty()) sc.reference_satellite = sc.satellites[0].label;
  }
  if (doc.contains("ground_stations")) {
    const Json& arr = doc.at("ground_stations");
    if (!arr.is_array()) fail("ground_stations", "expected an array");
    sc.ground_stations.clear();
    for (std::size_t i = 0; i < arr.size(); ++i)
      sc.ground_stations.push_back(parse_station(arr[i], "ground_stations[" + std::to_string(i) + "]"));
  }
  if (doc.contains("duration_s")) sc.duration_s = as_number(doc.at("duration_s"), "duration_s");
  if (doc.contains("sample_interval_s")) sc.sample_interval_s = as_number(doc.at("sample_interval_s"), "sample_interval_s");
  if (doc.contains("carrier_frequency_hz"))
    sc.carrier_frequency_hz = as_number(doc.at("carrier_frequency_hz"), "carrier_frequency_hz");
  if (doc.contains("gmm_components")) sc.gmm_components = as_count(doc.at("gmm_components"), "gmm_components");
  if (doc.contains("histogram_bins")) sc.histogram_bins = as_count(doc.at("histogram_bins"), "histogram_bins");
  if (doc.contains("reference_satellite"))
    sc.reference_satellite = as_string(doc.at("reference_satellite"), "reference_satellite");
  if (doc.contains("min_elevation_deg")) sc.min_elevation_deg = as_number(doc.at("min_elevation_deg"), "min_elevation_deg");
  if (doc.contains("fit")) {
    const Json& node = doc.at("fit");
    if (!node.is_object()) fail("fit", "expected an object");
    reject_unknown_keys(node, "fit", {"max_iterations", "tolerance", "restarts"});
    if (node.contains("max_iterations")) sc.fit.max_iterations = as_count(node.at("max_iterations"), "fit.max_iterations");
    if (node.contains("tolerance")) sc.fit.tolerance = as_number(node.at("tolerance"), "fit.tolerance");
    if (node.contains("restarts")) sc.fit.restarts = as_count(node.at("restarts"), "fit.restarts");
  }
  if (doc.contains("isl_topology")) {
    const std::string topo = as_string(doc.at("isl_topology"), "isl_topology");
    if (topo == "star") {
      sc.isl_topology = IslTopology::kStar;
    } else if (topo == "all_pairs") {
      sc.isl_topology = IslTopology::kAllPairs;
    } else {
      fail("isl_topology", "expected \"star\" or \"all_pairs\"");
    }
  }

  sc.validate();
  return sc;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("scenario: cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& sc) {
  Json doc;
  doc["duration_s"] = sc.duration_s;
  doc["sample_interval_s"] = sc.sample_interval_s;
  doc["carrier_frequency_hz"] = sc.carrier_frequency_hz;
  doc["gmm_components"] = sc.gmm_components;
  doc["histogram_bins"] = sc.histogram_bins;
  doc["reference_satellite"] = sc.reference_satellite;
  doc["min_elevation_deg"] = sc.min_elevation_deg;
  doc["isl_topology"] = sc.isl_topology == IslTopology::kStar ? "star" : "all_pairs";
  doc["fit"] = Json{{"max_iterations", sc.fit.max_iterations},
                    {"tolerance", sc.fit.tolerance},
                    {"restarts", sc.fit.restarts}};
  doc["satellites"] = Json::array();
  for (const auto& sat : sc.satellites) {
    doc["satellites"].push_back(Json{{"label", sat.label},
                                     {"semi_major_axis_km", sat.elements.semi_major_axis_km},
                                     {"eccentricity", sat.elements.eccentricity},
                                     {"inclination_deg", sat.elements.inclination_deg},
                                     {"raan_deg", sat.elements.raan_deg},
                                     {"arg_perigee_deg", sat.elements.arg_perigee_deg},
                                     {"true_anomaly_deg", sat.elements.true_anomaly_deg}});
  }
  doc["ground_stations"] = Json::array();
  for (const auto& gs : sc.ground_stations) {
    doc["ground_stations"].push_back(
        Json{{"latitude_deg", gs.latitude_deg}, {"longitude_deg", gs.longitude_deg}, {"radius_km", gs.radius_km}});
  }
  return doc.dump(2) + "\n";
}

LinkPlan build_links(const Scenario& sc) {
  sc.validate();
  LinkPlan plan;
  if (sc.isl_topology == IslTopology::kStar) {
    for (const auto& sat : sc.satellites) {
      if (sat.label != sc.reference_satellite) plan.isl.emplace_back(sc.reference_satellite, sat.label);
    }
  } else {
    for (std::size_t i = 0; i < sc.satellites.size(); ++i) {
      for (std::size_t j = i + 1; j < sc.satellites.size(); ++j)
        plan.isl.emplace_back(sc.satellites[i].label, sc.satellites[j].label);
    }
  }
  for (const auto& sat : sc.satellites) {
    for (std::size_t g = 0; g < sc.ground_stations.size(); ++g) plan.gs.emplace_back(sat.label, g);
  }
  return plan;
}

std::string isl_link_id(const std::string& a, const std::string& b) { return a + "_" + b; }

std::string gs_link_id(const std::string& sat, std::size_t gs_index) {
  return sat + "_GS" + std::to_string(gs_index + 1);
}

}  // namespace cislunar
