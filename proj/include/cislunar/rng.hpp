#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

#include "cislunar/constants.hpp"

namespace cislunar {

// Uniform double in [0,1) built from the top 53 bits of one engine draw.
// Avoids std::uniform_real_distribution, whose output is not pinned across
// standard library implementations.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Index drawn with probability weights[i] / sum(weights). Weights must be
// non-negative with a positive sum; the scan order fixes the result for a
// given engine state.
inline std::size_t pick_weighted(std::span<const double> weights, std::mt19937_64& rng) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w)) throw std::invalid_argument("pick_weighted: bad weight");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("pick_weighted: weights sum to zero");
  const double u = uniform01(rng) * total;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  return weights.size() - 1;
}

// Standard normal via Box-Muller; consumes exactly two engine draws.
inline double standard_normal(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

}  // namespace cislunar
