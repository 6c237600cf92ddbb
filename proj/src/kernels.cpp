#include "cislunar/kernels.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>
#include <vector>

#include "cislunar/constants.hpp"
#include "cislunar/doppler.hpp"

namespace cislunar::kernels {

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

void propagate_grid_serial(const KeplerOrbit& orbit, double dt_s, std::span<StateVector> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = orbit.at(static_cast<double>(i) * dt_s);
}

void propagate_grid_parallel(const KeplerOrbit& orbit, double dt_s, std::span<StateVector> out) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  std::exception_ptr failure = nullptr;  // exceptions must not unwind out of the omp region
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = orbit.at(static_cast<double>(i) * dt_s);
    } catch (...) {
#pragma omp critical(cislunar_propagate_grid_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void doppler_grid_serial(std::span<const StateVector> a, std::span<const StateVector> b, std::span<double> ppm_out) {
  if (a.size() != b.size() || a.size() != ppm_out.size())
    throw std::invalid_argument("doppler_grid: size mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) ppm_out[i] = signed_doppler_ppm(a[i], b[i]);
}

void doppler_grid_parallel(std::span<const StateVector> a, std::span<const StateVector> b, std::span<double> ppm_out) {
  if (a.size() != b.size() || a.size() != ppm_out.size())
    throw std::invalid_argument("doppler_grid: size mismatch");
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) ppm_out[i] = signed_doppler_ppm(a[i], b[i]);
}

namespace {

// Per-sample posterior row and log mixture density, shared verbatim by the
// serial and parallel E-step so the two stay bitwise identical.
inline double estep_row(double x, std::span<const double> log_weight_norm, std::span<const double> inv_two_var,
                        const GmmParams& params, std::span<double> row) {
  const std::size_t k_count = params.components();
  double max_log = -1e300;
  for (std::size_t k = 0; k < k_count; ++k) {
    const double d = x - params.means[k];
    const double lg = log_weight_norm[k] - d * d * inv_two_var[k];
    row[k] = lg;
    if (lg > max_log) max_log = lg;
  }
  double denom = 0.0;
  for (std::size_t k = 0; k < k_count; ++k) denom += std::exp(row[k] - max_log);
  const double log_density = max_log + std::log(denom);
  for (std::size_t k = 0; k < k_count; ++k) row[k] = std::exp(row[k] - log_density);
  return log_density;
}

struct EstepTables {
  std::vector<double> log_weight_norm;  // ln pi_k - 0.5 ln(2 pi sigma_k^2)
  std::vector<double> inv_two_var;      // 1 / (2 sigma_k^2)
};

EstepTables make_tables(const GmmParams& params) {
  params.validate();
  const std::size_t k_count = params.components();
  EstepTables t;
  t.log_weight_norm.resize(k_count);
  t.inv_two_var.resize(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    t.log_weight_norm[k] = std::log(params.weights[k]) - 0.5 * std::log(2.0 * kPi * params.variances[k]);
    t.inv_two_var[k] = 0.5 / params.variances[k];
  }
  return t;
}

void check_estep_sizes(std::span<const double> data, const GmmParams& params, std::span<double> resp_out,
                       std::span<double> log_density_out) {
  if (data.empty()) throw std::invalid_argument("e_step: data must be non-empty");
  if (resp_out.size() != data.size() * params.components() || log_density_out.size() != data.size())
    throw std::invalid_argument("e_step: output size mismatch");
}

}  // namespace

void gaussian_estep_serial(std::span<const double> data, const GmmParams& params, std::span<double> resp_out,
                           std::span<double> log_density_out) {
  check_estep_sizes(data, params, resp_out, log_density_out);
  const EstepTables t = make_tables(params);
  const std::size_t k_count = params.components();
  for (std::size_t m = 0; m < data.size(); ++m) {
    log_density_out[m] =
        estep_row(data[m], t.log_weight_norm, t.inv_two_var, params, resp_out.subspan(m * k_count, k_count));
  }
}

void gaussian_estep_parallel(std::span<const double> data, const GmmParams& params, std::span<double> resp_out,
                             std::span<double> log_density_out) {
  check_estep_sizes(data, params, resp_out, log_density_out);
  const EstepTables t = make_tables(params);
  const std::size_t k_count = params.components();
  const auto n = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < n; ++m) {
    log_density_out[m] = estep_row(data[static_cast<std::size_t>(m)], t.log_weight_norm, t.inv_two_var, params,
                                   resp_out.subspan(static_cast<std::size_t>(m) * k_count, k_count));
  }
}

namespace {

// Column update shared by both M-step variants; fixed-order sums over m keep
// the result independent of how columns are scheduled.
inline bool mstep_column(std::span<const double> data, std::span<const double> resp, std::size_t k_count,
                         std::size_t k, double& weight, double& mean, double& variance) {
  const std::size_t m_count = data.size();
  double mass = 0.0, first = 0.0;
  for (std::size_t m = 0; m < m_count; ++m) {
    const double r = resp[m * k_count + k];
    mass += r;
    first += r * data[m];
  }
  if (mass < 1e-10) return false;
  const double mu = first / mass;
  double second = 0.0;
  for (std::size_t m = 0; m < m_count; ++m) {
    const double d = data[m] - mu;
    second += resp[m * k_count + k] * d * d;
  }
  weight = mass / static_cast<double>(m_count);
  mean = mu;
  variance = std::max(second / mass, kVarianceFloor);
  return true;
}

}  // namespace

GmmParams gaussian_mstep_serial(std::span<const double> data, std::span<const double> resp, std::size_t k) {
  if (data.empty() || k == 0 || resp.size() != data.size() * k)
    throw std::invalid_argument("m_step: size mismatch");
  GmmParams out;
  out.weights.resize(k);
  out.means.resize(k);
  out.variances.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (!mstep_column(data, resp, k, j, out.weights[j], out.means[j], out.variances[j]))
      throw std::runtime_error("m_step: degenerate component (responsibility mass below 1e-10)");
  }
  return out;
}

GmmParams gaussian_mstep_parallel(std::span<const double> data, std::span<const double> resp, std::size_t k) {
  if (data.empty() || k == 0 || resp.size() != data.size() * k)
    throw std::invalid_argument("m_step: size mismatch");
  GmmParams out;
  out.weights.resize(k);
  out.means.resize(k);
  out.variances.resize(k);
  int degenerate = 0;
  const auto kk = static_cast<std::ptrdiff_t>(k);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < kk; ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (!mstep_column(data, resp, k, u, out.weights[u], out.means[u], out.variances[u])) {
#pragma omp atomic write
      degenerate = 1;
    }
  }
  if (degenerate) throw std::runtime_error("m_step: degenerate component (responsibility mass below 1e-10)");
  return out;
}

}  // namespace cislunar::kernels
