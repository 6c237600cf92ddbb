#include "cislunar/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cislunar/constants.hpp"
#include "cislunar/kernels.hpp"
#include "cislunar/rng.hpp"

namespace cislunar {

void GmmParams::validate() const {
  const std::size_t k = weights.size();
  if (k == 0) throw std::invalid_argument("GmmParams: at least one component required");
  if (means.size() != k || variances.size() != k)
    throw std::invalid_argument("GmmParams: weights/means/variances must have equal length");
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(weights[i] > 0.0 && weights[i] <= 1.0))
      throw std::invalid_argument("GmmParams: each weight must lie in (0,1]");
    if (!std::isfinite(means[i])) throw std::invalid_argument("GmmParams: means must be finite");
    if (!(variances[i] >= kVarianceFloor) || !std::isfinite(variances[i]))
      throw std::invalid_argument("GmmParams: variances must be at least the floor");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("GmmParams: weights must sum to 1");
}

double gmm_pdf(const GmmParams& params, double x) {
  params.validate();
  double density = 0.0;
  for (std::size_t k = 0; k < params.components(); ++k) {
    const double d = x - params.means[k];
    const double var = params.variances[k];
    density += params.weights[k] / std::sqrt(2.0 * kPi * var) * std::exp(-d * d / (2.0 * var));
  }
  return density;
}

double log_likelihood(std::span<const double> data, const GmmParams& params) {
  if (data.empty()) throw std::invalid_argument("log_likelihood: data must be non-empty");
  std::vector<double> resp(data.size() * params.components());
  std::vector<double> log_density(data.size());
  kernels::gaussian_estep_parallel(data, params, resp, log_density);
  return kernels::pairwise_sum(log_density);
}

GmmParams kmeans_pp_init(std::span<const double> data, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return kmeans_pp_init(data, k, rng);
}

GmmParams kmeans_pp_init(std::span<const double> data, std::size_t k, std::mt19937_64& rng) {
  if (k == 0) throw std::invalid_argument("kmeans_pp_init: k must be at least 1");
  if (data.size() < k) throw std::invalid_argument("kmeans_pp_init: fewer samples than components");
  {
    std::vector<double> distinct(data.begin(), data.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < k) throw std::invalid_argument("kmeans_pp_init: fewer distinct values than components");
  }
  const std::size_t m_count = data.size();

  std::vector<double> centroids;
  centroids.reserve(k);
  const std::size_t first = std::min(m_count - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(m_count)));
  centroids.push_back(data[first]);

  // Squared distance to the nearest chosen centroid, refreshed as centroids
  // are added; doubles as the Eq. 6 sampling weight.
  std::vector<double> min_sq(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    const double d = data[m] - centroids[0];
    min_sq[m] = d * d;
  }
  while (centroids.size() < k) {
    const std::size_t idx = pick_weighted(min_sq, rng);
    const double c = data[idx];
    centroids.push_back(c);
    for (std::size_t m = 0; m < m_count; ++m) {
      const double d = data[m] - c;
      min_sq[m] = std::min(min_sq[m], d * d);
    }
  }

  // Hard assignment to the nearest centroid; ties go to the lowest index.
  // Every centroid is a distinct data value, so its own samples keep the
  // cluster non-empty; the redraw path below guards the Eq. 7 division all
  // the same.
  GmmParams params;
  params.weights.assign(k, 0.0);
  params.means = centroids;
  params.variances.assign(k, 0.0);
  for (int redraw = 0; redraw <= 10; ++redraw) {
    std::vector<double> mass(k, 0.0), sq_sum(k, 0.0);
    for (std::size_t m = 0; m < m_count; ++m) {
      std::size_t best = 0;
      double best_d = std::abs(data[m] - params.means[0]);
      for (std::size_t j = 1; j < k; ++j) {
        const double d = std::abs(data[m] - params.means[j]);
        if (d < best_d) {
          best = j;
          best_d = d;
        }
      }
      mass[best] += 1.0;
      sq_sum[best] += best_d * best_d;
    }
    const auto empty = std::find(mass.begin(), mass.end(), 0.0);
    if (empty == mass.end()) {
      for (std::size_t j = 0; j < k; ++j) {
        params.weights[j] = mass[j] / static_cast<double>(m_count);
        params.variances[j] = std::max(sq_sum[j] / mass[j], kVarianceFloor);
      }
      return params;
    }
    const auto dead = static_cast<std::size_t>(empty - mass.begin());
    params.means[dead] = data[std::min(m_count - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(m_count)))];
  }
  throw std::runtime_error("kmeans_pp_init: empty cluster persisted through 10 redraws");
}

Responsibilities e_step(std::span<const double> data, const GmmParams& params) {
  Responsibilities resp;
  resp.samples = data.size();
  resp.components = params.components();
  resp.values.resize(data.size() * params.components());
  std::vector<double> log_density(data.size());
  kernels::gaussian_estep_parallel(data, params, resp.values, log_density);
  return resp;
}

GmmParams m_step(std::span<const double> data, const Responsibilities& resp) {
  if (resp.samples != data.size()) throw std::invalid_argument("m_step: responsibilities do not match data");
  return kernels::gaussian_mstep_parallel(data, resp.values, resp.components);
}

namespace {

struct EmRun {
  GmmParams params;
  FitTrace trace;
};

EmRun run_em(std::span<const double> data, std::size_t k, const FitConfig& config, std::mt19937_64& rng) {
  EmRun run;
  run.params = kmeans_pp_init(data, k, rng);

  std::vector<double> resp(data.size() * k);
  std::vector<double> log_density(data.size());
  kernels::gaussian_estep_parallel(data, run.params, resp, log_density);
  double log_lik = kernels::pairwise_sum(log_density);
  run.trace.log_likelihoods.push_back(log_lik);

  for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
    run.params = kernels::gaussian_mstep_parallel(data, resp, k);
    run.trace.iterations = iter + 1;
    kernels::gaussian_estep_parallel(data, run.params, resp, log_density);
    const double next = kernels::pairwise_sum(log_density);
    run.trace.log_likelihoods.push_back(next);
    const bool settled = std::abs(next - log_lik) < config.tolerance;
    log_lik = next;
    if (settled) {
      run.trace.converged = true;
      break;
    }
  }
  return run;
}

}  // namespace

std::pair<GmmParams, FitTrace> fit_em(std::span<const double> data, std::size_t k, const FitConfig& config) {
  if (data.size() < k) throw std::invalid_argument("fit_em: fewer samples than components");
  if (config.restarts == 0) throw std::invalid_argument("fit_em: restarts must be at least 1");
  if (!(config.tolerance > 0.0)) throw std::invalid_argument("fit_em: tolerance must be positive");

  std::mt19937_64 master(config.seed);
  bool have_best = false;
  EmRun best;
  std::exception_ptr last_error = nullptr;
  for (std::size_t r = 0; r < config.restarts; ++r) {
    std::mt19937_64 restart_rng(master());
    try {
      EmRun run = run_em(data, k, config, restart_rng);
      if (!have_best || run.trace.log_likelihoods.back() > best.trace.log_likelihoods.back()) {
        best = std::move(run);
        have_best = true;
      }
    } catch (...) {
      last_error = std::current_exception();
    }
  }
  if (!have_best) std::rethrow_exception(last_error);
  return {std::move(best.params), std::move(best.trace)};
}

ConstellationModel fit_constellation(const std::vector<std::vector<double>>& link_data, std::size_t k,
                                     const FitConfig& config) {
  if (link_data.empty()) throw std::invalid_argument("fit_constellation: at least one link required");

  // Distinct deterministic sub-seed per link (pooled fit last) so links stay
  // independent while the whole model is fixed by config.seed.
  std::mt19937_64 master(config.seed);
  std::vector<std::uint64_t> seeds(link_data.size() + 1);
  for (auto& s : seeds) s = master();

  ConstellationModel model;
  model.links.resize(link_data.size());
  std::vector<double> pooled_data;

  for (std::size_t i = 0; i < link_data.size(); ++i) {
    pooled_data.insert(pooled_data.end(), link_data[i].begin(), link_data[i].end());
    FitConfig link_config = config;
    link_config.seed = seeds[i];
    LinkFit& fit = model.links[i];
    try {
      auto [params, trace] = fit_em(link_data[i], k, link_config);
      fit.params = std::move(params);
      fit.trace = std::move(trace);
      fit.ok = true;
    } catch (const std::exception& e) {
      fit.ok = false;
      fit.error = e.what();
    }
  }

  FitConfig pooled_config = config;
  pooled_config.seed = seeds.back();
  try {
    auto [params, trace] = fit_em(pooled_data, k, pooled_config);
    model.pooled.params = std::move(params);
    model.pooled.trace = std::move(trace);
    model.pooled.ok = true;
  } catch (const std::exception& e) {
    model.pooled.ok = false;
    model.pooled.error = e.what();
  }
  return model;
}

std::vector<double> sample_mixture(const GmmParams& params, std::size_t n, std::mt19937_64& rng) {
  params.validate();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = pick_weighted(params.weights, rng);
    out[i] = params.means[k] + std::sqrt(params.variances[k]) * standard_normal(rng);
  }
  return out;
}

}  // namespace cislunar
