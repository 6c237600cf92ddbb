#include "cislunar/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "cislunar/constants.hpp"
#include "json.hpp"

namespace cislunar {

namespace {

using Json = nlohmann::ordered_json;

double parse_double(std::string_view token, const std::string& context) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw std::runtime_error(context + ": bad numeric field '" + std::string(token) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

Json params_to_json(const GmmParams& params) {
  return Json{{"weights", params.weights}, {"means", params.means}, {"variances", params.variances}};
}

GmmParams params_from_json(const Json& node, const std::string& context) {
  if (!node.is_object() || !node.contains("weights") || !node.contains("means") || !node.contains("variances"))
    throw std::runtime_error(context + ": expected weights/means/variances");
  GmmParams params;
  params.weights = node.at("weights").get<std::vector<double>>();
  params.means = node.at("means").get<std::vector<double>>();
  params.variances = node.at("variances").get<std::vector<double>>();
  params.validate();
  return params;
}

}  // namespace

std::string format_double(double v) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buffer, ptr);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  const std::filesystem::path tmp = path.parent_path() / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_file_atomic: cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write_file_atomic: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_file: cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string doppler_series_to_csv(const DopplerSeries& series) {
  std::string out = "t_s,ppm,visible\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += format_double(series.t_s[i]);
    out += ',';
    out += format_double(series.ppm[i]);
    out += ',';
    out += series.visible[i] ? '1' : '0';
    out += '\n';
  }
  return out;
}

DopplerSeries doppler_series_from_csv(const std::string& text, std::string link_id) {
  DopplerSeries series;
  series.link_id = std::move(link_id);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || (line != "t_s,ppm,visible" && line != "t_s,ppm,visible\r"))
    throw std::runtime_error("doppler series csv: missing 't_s,ppm,visible' header");
  std::size_t row = 1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    const std::string context = "doppler series csv row " + std::to_string(row);
    if (fields.size() != 3) throw std::runtime_error(context + ": expected 3 fields");
    series.t_s.push_back(parse_double(fields[0], context));
    series.ppm.push_back(parse_double(fields[1], context));
    if (fields[2] == "1") {
      series.visible.push_back(1);
    } else if (fields[2] == "0") {
      series.visible.push_back(0);
    } else {
      throw std::runtime_error(context + ": visible flag must be 0 or 1");
    }
    ++row;
  }
  if (series.t_s.empty()) throw std::runtime_error("doppler series csv: no data rows");
  return series;
}

std::string isl_series_filename(const std::string& link_id) { return "isl_" + link_id + ".csv"; }

std::string gs_series_filename(const std::string& link_id) { return "gs_" + link_id + ".csv"; }

std::string models_to_json(const std::vector<std::pair<std::string, LinkFit>>& fits) {
  Json doc = Json::object();
  for (const auto& [link_id, fit] : fits) {
    if (fit.ok) {
      doc[link_id] = params_to_json(fit.params);
    } else {
      doc[link_id] = Json{{"error", fit.error}};
    }
  }
  return doc.dump(2) + "\n";
}

std::vector<std::pair<std::string, LinkFit>> models_from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("models json: malformed: ") + e.what());
  }
  if (!doc.is_object()) throw std::runtime_error("models json: expected an object");
  std::vector<std::pair<std::string, LinkFit>> out;
  for (const auto& [link_id, node] : doc.items()) {
    LinkFit fit;
    if (node.is_object() && node.contains("error")) {
      fit.ok = false;
      fit.error = node.at("error").get<std::string>();
    } else {
      fit.params = params_from_json(node, "models json entry " + link_id);
      fit.ok = true;
    }
    out.emplace_back(link_id, std::move(fit));
  }
  return out;
}

std::string metrics_to_csv(const std::vector<MetricsRow>& rows) {
  std::string out = "link_id,wmrd,kl_divergence\n";
  for (const auto& row : rows) {
    out += row.link_id;
    out += ',';
    out += format_double(row.wmrd);
    out += ',';
    out += format_double(row.kl_divergence);
    out += '\n';
  }
  return out;
}

std::vector<MetricsRow> metrics_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || (line != "link_id,wmrd,kl_divergence" && line != "link_id,wmrd,kl_divergence\r"))
    throw std::runtime_error("metrics csv: missing 'link_id,wmrd,kl_divergence' header");
  std::vector<MetricsRow> rows;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    const std::string context = "metrics csv row " + std::to_string(n);
    if (fields.size() != 3) throw std::runtime_error(context + ": expected 3 fields");
    rows.push_back(MetricsRow{std::string(fields[0]), parse_double(fields[1], context), parse_double(fields[2], context)});
    ++n;
  }
  return rows;
}

std::string manifest_to_json(const RunManifest& m) {
  Json doc;
  doc["scenario_hash"] = m.scenario_hash;
  doc["seed"] = m.seed;
  doc["samples_per_link"] = m.samples_per_link;
  doc["constants"] =
      Json{{"gm_moon_km3_s2", kMoonGm}, {"moon_radius_km", kMoonRadiusKm}, {"speed_of_light_km_s", kSpeedOfLightKmS}};
  doc["isl_links"] = m.isl_links;
  doc["gs_links"] = m.gs_links;
  doc["scenario"] = Json::parse(serialize_scenario(m.scenario));
  return doc.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("manifest json: malformed: ") + e.what());
  }
  RunManifest m;
  try {
    m.scenario_hash = doc.at("scenario_hash").get<std::string>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.samples_per_link = doc.at("samples_per_link").get<std::size_t>();
    m.isl_links = doc.at("isl_links").get<std::vector<std::string>>();
    m.gs_links = doc.at("gs_links").get<std::vector<std::string>>();
    m.scenario = load_scenario(doc.at("scenario").dump());
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("manifest json: ") + e.what());
  }
  return m;
}

std::string scenario_hash(const Scenario& sc) {
  const std::string canonical = serialize_scenario(sc);
  std::uint64_t hash = 1469598103934665603ull;  // FNV-1a offset basis
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buffer);
}

}  // namespace cislunar
