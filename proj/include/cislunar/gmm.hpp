#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cislunar {

// Weights, means and variances of a K-component 1-D Gaussian mixture.
struct GmmParams {
  std::vector<double> weights;
  std::vector<double> means;
  std::vector<double> variances;

  std::size_t components() const { return weights.size(); }

  bool operator==(const GmmParams&) const = default;

  // Throws std::invalid_argument unless sizes match, K >= 1,
  // each weight is in (0,1] summing to 1 within 1e-12, and every variance
  // is at least the floor.
  void validate() const;
};

// Lowest admissible component variance [ppm^2]; applied after every M-step
// and at initialization so components cannot collapse onto repeated samples.
inline constexpr double kVarianceFloor = 1e-12;

// Row-stochastic M x K posterior matrix, row m = responsibilities of sample m.
struct Responsibilities {
  std::size_t samples = 0;
  std::size_t components = 0;
  std::vector<double> values;  // row-major, samples * components

  double operator()(std::size_t m, std::size_t k) const { return values[m * components + k]; }
};

struct FitTrace {
  std::vector<double> log_likelihoods;  // one entry per E-step evaluation
  std::size_t iterations = 0;           // number of M-steps taken
  bool converged = false;
};

struct FitConfig {
  std::size_t max_iterations = 500;
  double tolerance = 1e-8;  // absolute |delta log-likelihood|
  std::uint64_t seed = 1;
  std::size_t restarts = 5;
};

// One fitted link; ok = false carries the error text instead of params.
struct LinkFit {
  GmmParams params;
  FitTrace trace;
  bool ok = false;
  std::string error;
};

// Per-link models in input order plus the fit over the concatenated data.
struct ConstellationModel {
  std::vector<LinkFit> links;
  LinkFit pooled;
};

double gmm_pdf(const GmmParams& params, double x);

// Sum over samples of ln gmm_pdf, evaluated with log-sum-exp per sample.
double log_likelihood(std::span<const double> data, const GmmParams& params);

// k-means++ seeding: first centroid uniform from data, later centroids drawn
// proportional to squared distance from the nearest chosen one; sigma^2 and
// pi come from the hard assignment to those centroids. Deterministic per seed.
GmmParams kmeans_pp_init(std::span<const double> data, std::size_t k, std::uint64_t seed);
GmmParams kmeans_pp_init(std::span<const double> data, std::size_t k, std::mt19937_64& rng);

Responsibilities e_step(std::span<const double> data, const GmmParams& params);

GmmParams m_step(std::span<const double> data, const Responsibilities& resp);

// EM from k-means++ seeding until |delta L| < tolerance or max_iterations;
// best final log-likelihood among config.restarts independently seeded runs
// wins. Degenerate-component failures propagate only if every restart fails.
std::pair<GmmParams, FitTrace> fit_em(std::span<const double> data, std::size_t k, const FitConfig& config = {});

// Independent fit_em per link plus one pooled fit over the concatenation.
// Per-link failures are recorded in the result, not thrown.
ConstellationModel fit_constellation(const std::vector<std::vector<double>>& link_data, std::size_t k,
                                     const FitConfig& config = {});

// Draws n points from the mixture; component by weight, value by Box-Muller.
std::vector<double> sample_mixture(const GmmParams& params, std::size_t n, std::mt19937_64& rng);

}  // namespace cislunar
