// Times the serial reference kernels against their OpenMP counterparts and
// checks that the two produce bitwise-identical results while at it.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "cislunar/constants.hpp"
#include "cislunar/gmm.hpp"
#include "cislunar/kernels.hpp"
#include "cislunar/orbit.hpp"
#include "cislunar/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename F>
double time_best_of(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = Clock::now();
    body();
    best = std::min(best, ms_since(start));
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-18s serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx   bitwise %s\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms, identical ? "equal" : "DIFFERENT");
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool states_equal(const std::vector<cislunar::StateVector>& a, const std::vector<cislunar::StateVector>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].position_km != b[i].position_km || a[i].velocity_km_s != b[i].velocity_km_s) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("kernel benchmark: n = %zu, best of %d\n", n, reps);

  using namespace cislunar;

  OrbitalElements el;
  el.semi_major_axis_km = 1837.4;
  el.inclination_deg = 80.0;
  el.raan_deg = 90.0;
  const KeplerOrbit orbit = make_orbit(el, kMoonGm);
  OrbitalElements el2 = el;
  el2.inclination_deg = 100.0;
  const KeplerOrbit orbit2 = make_orbit(el2, kMoonGm);

  std::vector<StateVector> grid_s(n), grid_p(n), other(n);
  const double dt = 10.0;
  const double prop_serial = time_best_of(reps, [&] { kernels::propagate_grid_serial(orbit, dt, grid_s); });
  const double prop_parallel = time_best_of(reps, [&] { kernels::propagate_grid_parallel(orbit, dt, grid_p); });
  report("propagate_grid", prop_serial, prop_parallel, states_equal(grid_s, grid_p));

  kernels::propagate_grid_parallel(orbit2, dt, other);
  std::vector<double> ppm_s(n), ppm_p(n);
  const double dop_serial = time_best_of(reps, [&] { kernels::doppler_grid_serial(grid_s, other, ppm_s); });
  const double dop_parallel = time_best_of(reps, [&] { kernels::doppler_grid_parallel(grid_s, other, ppm_p); });
  report("doppler_grid", dop_serial, dop_parallel, bits_equal(ppm_s, ppm_p));

  GmmParams params;
  params.weights = {0.2288, 0.2229, 0.2913, 0.1309, 0.1261};
  params.means = {-0.066, 0.0660, -0.0011, -0.0918, 0.0917};
  params.variances = {2.5677e-4, 2.65e-4, 8.7808e-4, 8.9384e-6, 9.2748e-6};
  std::mt19937_64 rng(7);
  const std::vector<double> data = sample_mixture(params, n, rng);
  const std::size_t k = params.components();

  std::vector<double> resp_s(n * k), resp_p(n * k), logd_s(n), logd_p(n);
  const double estep_serial = time_best_of(reps, [&] { kernels::gaussian_estep_serial(data, params, resp_s, logd_s); });
  const double estep_parallel =
      time_best_of(reps, [&] { kernels::gaussian_estep_parallel(data, params, resp_p, logd_p); });
  report("gaussian_estep", estep_serial, estep_parallel, bits_equal(resp_s, resp_p) && bits_equal(logd_s, logd_p));

  GmmParams m_serial, m_parallel;
  const double mstep_serial = time_best_of(reps, [&] { m_serial = kernels::gaussian_mstep_serial(data, resp_s, k); });
  const double mstep_parallel =
      time_best_of(reps, [&] { m_parallel = kernels::gaussian_mstep_parallel(data, resp_s, k); });
  report("gaussian_mstep", mstep_serial, mstep_parallel,
         bits_equal(m_serial.weights, m_parallel.weights) && bits_equal(m_serial.means, m_parallel.means) &&
             bits_equal(m_serial.variances, m_parallel.variances));

  return 0;
}
