#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cislunar/gmm.hpp"

namespace cislunar {

// Uniform-bin empirical density over [min, max] of the input sample.
struct HistogramPdf {
  std::vector<double> bin_edges;      // size bins + 1, strictly increasing
  std::vector<std::size_t> counts;    // size bins
  std::vector<double> densities;      // size bins, count / (M * width)

  std::size_t bins() const { return counts.size(); }
  double bin_width() const { return bin_edges[1] - bin_edges[0]; }
  std::size_t total_count() const;
  std::vector<double> midpoints() const;
  // Per-bin probability masses count / M.
  std::vector<double> masses() const;
};

// Max edge inclusive. Throws std::invalid_argument on empty data, bins == 0,
// or zero-width range (all samples equal).
HistogramPdf histogram_pdf(std::span<const double> data, std::size_t bins);

// Per-bin model mass: pdf at the bin midpoint times bin width, renormalized
// to sum 1 over the histogram support.
std::vector<double> discretize_model(const GmmParams& params, const HistogramPdf& hist);

// Weighted mean relative difference sum|p_hat - p| / (0.5 * sum(p_hat + p));
// range [0, 2] on normalized mass vectors.
double wmrd(std::span<const double> p_hat, std::span<const double> p);

// sum over p_hat > 0 of p_hat * ln(p_hat / max(p, 1e-12)), natural log,
// fitted model first.
double kl_divergence(std::span<const double> p_hat, std::span<const double> p);

}  // namespace cislunar
