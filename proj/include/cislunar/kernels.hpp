#pragma once

#include <cstddef>
#include <span>

#include "cislunar/gmm.hpp"
#include "cislunar/orbit.hpp"

// Hot loops behind the orbit/doppler/gmm modules. Every kernel exists in a
// serial reference form and an OpenMP form; the pair is bitwise identical
// for identical inputs because per-element work is shared and every
// reduction runs in a fixed order. The parallel forms are the ones wired
// into the library; the serial forms are kept for tests and benchmarks.
namespace cislunar::kernels {

// Fixed-order pairwise (cascade) summation; result independent of thread
// count because it is always evaluated serially over a stable layout.
double pairwise_sum(std::span<const double> values);

void propagate_grid_serial(const KeplerOrbit& orbit, double dt_s, std::span<StateVector> out);
void propagate_grid_parallel(const KeplerOrbit& orbit, double dt_s, std::span<StateVector> out);

// Signed relative-speed Doppler [ppm] per sample pair.
void doppler_grid_serial(std::span<const StateVector> a, std::span<const StateVector> b, std::span<double> ppm_out);
void doppler_grid_parallel(std::span<const StateVector> a, std::span<const StateVector> b, std::span<double> ppm_out);

// Responsibilities (row-major M x K) and per-sample log mixture density.
void gaussian_estep_serial(std::span<const double> data, const GmmParams& params, std::span<double> resp_out,
                           std::span<double> log_density_out);
void gaussian_estep_parallel(std::span<const double> data, const GmmParams& params, std::span<double> resp_out,
                             std::span<double> log_density_out);

// Eq.-8 style update from a row-stochastic responsibility matrix. Throws
// std::runtime_error when some column mass falls below 1e-10.
GmmParams gaussian_mstep_serial(std::span<const double> data, std::span<const double> resp, std::size_t k);
GmmParams gaussian_mstep_parallel(std::span<const double> data, std::span<const double> resp, std::size_t k);

}  // namespace cislunar::kernels
