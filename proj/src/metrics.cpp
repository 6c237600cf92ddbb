#include "cislunar/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cislunar/kernels.hpp"

namespace cislunar {

std::size_t HistogramPdf::total_count() const {
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  return total;
}

std::vector<double> HistogramPdf::midpoints() const {
  std::vector<double> mid(bins());
  for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (bin_edges[i] + bin_edges[i + 1]);
  return mid;
}

std::vector<double> HistogramPdf::masses() const {
  const auto m = static_cast<double>(total_count());
  std::vector<double> out(bins());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(counts[i]) / m;
  return out;
}

HistogramPdf histogram_pdf(std::span<const double> data, std::size_t bins) {
  if (data.empty()) throw std::invalid_argument("histogram_pdf: data must be non-empty");
  if (bins == 0) throw std::invalid_argument("histogram_pdf: bins must be at least 1");
  const auto [lo_it, hi_it] = std::minmax_element(data.begin(), data.end());
  const double lo = *lo_it, hi = *hi_it;
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("histogram_pdf: data must be finite");
  if (lo == hi) throw std::invalid_argument("histogram_pdf: zero-width range (all samples equal)");

  HistogramPdf hist;
  hist.counts.assign(bins, 0);
  hist.bin_edges.resize(bins + 1);
  const double range = hi - lo;
  for (std::size_t i = 0; i <= bins; ++i)
    hist.bin_edges[i] = lo + range * static_cast<double>(i) / static_cast<double>(bins);
  hist.bin_edges.back() = hi;

  const double scale = static_cast<double>(bins) / range;
  for (double x : data) {
    auto idx = static_cast<std::size_t>((x - lo) * scale);
    if (idx >= bins) idx = bins - 1;  // max edge inclusive
    ++hist.counts[idx];
  }

  const double width = range / static_cast<double>(bins);
  const auto m = static_cast<double>(data.size());
  hist.densities.resize(bins);
  for (std::size_t i = 0; i < bins; ++i) hist.densities[i] = static_cast<double>(hist.counts[i]) / (m * width);
  return hist;
}

std::vector<double> discretize_model(const GmmParams& params, const HistogramPdf& hist) {
  if (hist.bins() == 0 || hist.bin_edges.size() != hist.bins() + 1)
    throw std::invalid_argument("discretize_model: malformed histogram");
  const double width = hist.bin_width();
  std::vector<double> mass(hist.bins());
  for (std::size_t i = 0; i < mass.size(); ++i)
    mass[i] = gmm_pdf(params, 0.5 * (hist.bin_edges[i] + hist.bin_edges[i + 1])) * width;
  const double total = kernels::pairwise_sum(mass);
  if (!(total > 0.0)) throw std::invalid_argument("discretize_model: model mass vanishes on the histogram support");
  for (double& v : mass) v /= total;
  return mass;
}

namespace {

void check_mass_vectors(std::span<const double> p_hat, std::span<const double> p) {
  if (p_hat.size() != p.size() || p_hat.empty())
    throw std::invalid_argument("metrics: mass vectors must be non-empty and equal length");
  for (std::size_t i = 0; i < p_hat.size(); ++i) {
    if (!(p_hat[i] >= 0.0) || !(p[i] >= 0.0)) throw std::invalid_argument("metrics: masses must be non-negative");
  }
}

}  // namespace

double wmrd(std::span<const double> p_hat, std::span<const double> p) {
  check_mass_vectors(p_hat, p);
  double abs_diff = 0.0, total = 0.0;
  for (std::size_t i = 0; i < p_hat.size(); ++i) {
    abs_diff += std::abs(p_hat[i] - p[i]);
    total += p_hat[i] + p[i];
  }
  if (total <= 0.0) throw std::invalid_argument("wmrd: all-zero inputs");
  return abs_diff / (0.5 * total);
}

double kl_divergence(std::span<const double> p_hat, std::span<const double> p) {
  check_mass_vectors(p_hat, p);
  double div = 0.0;
  for (std::size_t i = 0; i < p_hat.size(); ++i) {
    if (p_hat[i] > 0.0) div += p_hat[i] * std::log(p_hat[i] / std::max(p[i], 1e-12));
  }
  return div;
}

}  // namespace cislunar
