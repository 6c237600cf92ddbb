#pragma once

// Independent reference computations used to check derived values: plain
// quadrature, naive likelihood evaluation and component alignment. These
// deliberately avoid the library's own numerics.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cislunar/constants.hpp"
#include "cislunar/gmm.hpp"

namespace oracles {

// Composite Simpson rule over [a, b] with n (even) intervals.
template <typename F>
double simpson(F&& f, double a, double b, int n) {
  if (n % 2 != 0 || n <= 0) throw std::invalid_argument("simpson: n must be positive and even");
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Integral of the mixture pdf over mean range padded by 10 max sigma.
inline double mixture_integral(const cislunar::GmmParams& params, int n = 20000) {
  const double mu_lo = *std::min_element(params.means.begin(), params.means.end());
  const double mu_hi = *std::max_element(params.means.begin(), params.means.end());
  double sigma_max = 0.0;
  for (double v : params.variances) sigma_max = std::max(sigma_max, std::sqrt(v));
  return simpson([&](double x) { return cislunar::gmm_pdf(params, x); }, mu_lo - 10.0 * sigma_max,
                 mu_hi + 10.0 * sigma_max, n);
}

// Direct likelihood without log-sum-exp; valid only on well-scaled data.
inline double naive_log_likelihood(const std::vector<double>& data, const cislunar::GmmParams& params) {
  double total = 0.0;
  for (double x : data) {
    double density = 0.0;
    for (std::size_t k = 0; k < params.components(); ++k) {
      const double d = x - params.means[k];
      density += params.weights[k] / std::sqrt(2.0 * cislunar::kPi * params.variances[k]) *
                 std::exp(-d * d / (2.0 * params.variances[k]));
    }
    total += std::log(density);
  }
  return total;
}

// Greedy assignment minimizing |delta mu| pair by pair; result[i] is the
// fitted component matched to truth component i.
inline std::vector<std::size_t> match_components(const cislunar::GmmParams& fitted, const cislunar::GmmParams& truth) {
  const std::size_t k = truth.components();
  if (fitted.components() != k) throw std::invalid_argument("match_components: component count mismatch");
  std::vector<std::size_t> match(k, k);
  std::vector<bool> truth_done(k, false), fitted_done(k, false);
  for (std::size_t round = 0; round < k; ++round) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bt = k, bf = k;
    for (std::size_t t = 0; t < k; ++t) {
      if (truth_done[t]) continue;
      for (std::size_t f = 0; f < k; ++f) {
        if (fitted_done[f]) continue;
        const double d = std::abs(fitted.means[f] - truth.means[t]);
        if (d < best) {
          best = d;
          bt = t;
          bf = f;
        }
      }
    }
    truth_done[bt] = true;
    fitted_done[bf] = true;
    match[bt] = bf;
  }
  return match;
}

// Table III "LLO-1 and -2" generator parameters.
inline cislunar::GmmParams table3_row1() {
  cislunar::GmmParams params;
  params.weights = {0.2288, 0.2229, 0.2913, 0.1309, 0.1261};
  params.means = {-0.066, 0.0660, -0.0011, -0.0918, 0.0917};
  params.variances = {2.5677e-4, 2.65e-4, 8.7808e-4, 8.9384e-6, 9.2748e-6};
  return params;
}

}  // namespace oracles
