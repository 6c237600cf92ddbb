#include "cislunar/pipeline.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "cislunar/constants.hpp"
#include "cislunar/gmm.hpp"
#include "cislunar/metrics.hpp"

namespace cislunar {

namespace {

Scenario apply_overrides(Scenario sc, const RunOverrides& ovr) {
  if (ovr.gmm_components) sc.gmm_components = *ovr.gmm_components;
  if (ovr.histogram_bins) sc.histogram_bins = *ovr.histogram_bins;
  if (ovr.min_elevation_deg) sc.min_elevation_deg = *ovr.min_elevation_deg;
  sc.validate();
  return sc;
}

// Sim-dir contents addressed by link id, resolved through the manifest.
struct SimReader {
  std::filesystem::path dir;
  RunManifest manifest;

  explicit SimReader(const std::filesystem::path& sim_dir)
      : dir(sim_dir), manifest(manifest_from_json(read_file(sim_dir / "manifest.json"))) {}

  DopplerSeries isl(const std::string& link_id) const {
    return doppler_series_from_csv(read_file(dir / isl_series_filename(link_id)), link_id);
  }
  DopplerSeries gs(const std::string& link_id) const {
    return doppler_series_from_csv(read_file(dir / gs_series_filename(link_id)), link_id);
  }
};

std::string curve_filename(const std::string& link_id) { return "curve_" + link_id + ".csv"; }

std::string curve_to_csv(const HistogramPdf& hist, const GmmParams& params) {
  std::string out = "x_ppm,model_density,histogram_density\n";
  const auto mids = hist.midpoints();
  for (std::size_t i = 0; i < mids.size(); ++i) {
    out += format_double(mids[i]);
    out += ',';
    out += format_double(gmm_pdf(params, mids[i]));
    out += ',';
    out += format_double(hist.densities[i]);
    out += '\n';
  }
  return out;
}

}  // namespace

SimulatedLinks simulate_links(const Scenario& sc) {
  sc.validate();
  const LinkPlan plan = build_links(sc);

  // One ephemeris per satellite, shared across every link touching it.
  std::map<std::string, Ephemeris> ephemerides;
  for (const auto& sat : sc.satellites)
    ephemerides.emplace(sat.label, make_ephemeris(sat.elements, kMoonGm, sc.duration_s, sc.sample_interval_s));

  SimulatedLinks links;
  links.isl.reserve(plan.isl.size());
  for (const auto& [a, b] : plan.isl)
    links.isl.push_back(isl_doppler_series(ephemerides.at(a), ephemerides.at(b), isl_link_id(a, b)));
  links.gs.reserve(plan.gs.size());
  for (const auto& [sat, g] : plan.gs) {
    links.gs.push_back(
        gs_doppler_series(ephemerides.at(sat), sc.ground_stations[g], sc.min_elevation_deg, gs_link_id(sat, g)));
  }
  return links;
}

void run_simulate(const Scenario& sc_in, const std::filesystem::path& out_dir, const RunOverrides& ovr) {
  const Scenario sc = apply_overrides(sc_in, ovr);
  std::filesystem::create_directories(out_dir);

  const SimulatedLinks links = simulate_links(sc);

  RunManifest manifest;
  manifest.scenario_hash = scenario_hash(sc);
  manifest.seed = ovr.seed.value_or(1);
  manifest.samples_per_link = sc.samples_per_link();
  manifest.scenario = sc;
  for (const auto& series : links.isl) {
    manifest.isl_links.push_back(series.link_id);
    write_file_atomic(out_dir / isl_series_filename(series.link_id), doppler_series_to_csv(series));
  }
  for (const auto& series : links.gs) {
    manifest.gs_links.push_back(series.link_id);
    write_file_atomic(out_dir / gs_series_filename(series.link_id), doppler_series_to_csv(series));
  }
  write_file_atomic(out_dir / "manifest.json", manifest_to_json(manifest));
}

void run_fit(const std::filesystem::path& sim_dir, const std::filesystem::path& out_dir, const RunOverrides& ovr) {
  const SimReader sim(sim_dir);
  const Scenario& sc = sim.manifest.scenario;
  const std::size_t k = ovr.gmm_components.value_or(sc.gmm_components);
  const std::size_t bins = ovr.histogram_bins.value_or(sc.histogram_bins);

  FitConfig config;
  config.max_iterations = sc.fit.max_iterations;
  config.tolerance = sc.fit.tolerance;
  config.restarts = sc.fit.restarts;
  config.seed = ovr.seed.value_or(sim.manifest.seed);

  // The distribution study covers the inter-satellite links; only visible
  // samples feed the fits.
  std::vector<std::vector<double>> link_data;
  link_data.reserve(sim.manifest.isl_links.size());
  for (const auto& link_id : sim.manifest.isl_links) link_data.push_back(sim.isl(link_id).visible_ppm());

  const ConstellationModel model = fit_constellation(link_data, k, config);

  std::filesystem::create_directories(out_dir);
  std::vector<std::pair<std::string, LinkFit>> fits;
  fits.reserve(model.links.size() + 1);
  for (std::size_t i = 0; i < model.links.size(); ++i)
    fits.emplace_back(sim.manifest.isl_links[i], model.links[i]);
  fits.emplace_back("ALL", model.pooled);
  write_file_atomic(out_dir / "models.json", models_to_json(fits));

  std::vector<double> pooled;
  for (const auto& data : link_data) pooled.insert(pooled.end(), data.begin(), data.end());
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const auto& [link_id, fit] = fits[i];
    if (!fit.ok) continue;
    const std::vector<double>& data = i < link_data.size() ? link_data[i] : pooled;
    const HistogramPdf hist = histogram_pdf(data, bins);
    write_file_atomic(out_dir / curve_filename(link_id), curve_to_csv(hist, fit.params));
  }
}

void run_evaluate(const std::filesystem::path& sim_dir, const std::filesystem::path& fit_dir,
                  const std::filesystem::path& out_dir) {
  const SimReader sim(sim_dir);
  const std::size_t bins = sim.manifest.scenario.histogram_bins;
  const auto fits = models_from_json(read_file(fit_dir / "models.json"));

  std::map<std::string, std::vector<double>> data_by_link;
  std::vector<double> pooled;
  for (const auto& link_id : sim.manifest.isl_links) {
    auto data = sim.isl(link_id).visible_ppm();
    pooled.insert(pooled.end(), data.begin(), data.end());
    data_by_link.emplace(link_id, std::move(data));
  }

  std::vector<MetricsRow> rows;
  rows.reserve(fits.size());
  for (const auto& [link_id, fit] : fits) {
    if (!fit.ok) continue;
    const std::vector<double>* data = nullptr;
    if (link_id == "ALL") {
      data = &pooled;
    } else {
      const auto it = data_by_link.find(link_id);
      if (it == data_by_link.end())
        throw std::runtime_error("evaluate: fitted link " + link_id + " missing from simulation outputs");
      data = &it->second;
    }
    const HistogramPdf hist = histogram_pdf(*data, bins);
    const std::vector<double> p = hist.masses();
    const std::vector<double> p_hat = discretize_model(fit.params, hist);
    rows.push_back(MetricsRow{link_id, wmrd(p_hat, p), kl_divergence(p_hat, p)});
  }

  std::filesystem::create_directories(out_dir);
  write_file_atomic(out_dir / "metrics.csv", metrics_to_csv(rows));
}

void run_timeseries(const std::filesystem::path& sim_dir, const std::string& link_id,
                    const std::filesystem::path& out_path) {
  const SimReader sim(sim_dir);
  const auto& isl = sim.manifest.isl_links;
  const auto& gs = sim.manifest.gs_links;

  DopplerSeries series;
  if (std::find(isl.begin(), isl.end(), link_id) != isl.end()) {
    series = sim.isl(link_id);
  } else if (std::find(gs.begin(), gs.end(), link_id) != gs.end()) {
    series = sim.gs(link_id);
  } else {
    throw std::runtime_error("timeseries: unknown link id " + link_id);
  }
  if (out_path.has_parent_path()) std::filesystem::create_directories(out_path.parent_path());
  write_file_atomic(out_path, doppler_series_to_csv(series));
}

}  // namespace cislunar
