#include <cmath>
#include <random>
#include <stdexcept>

#include "cislunar/constants.hpp"
#include "cislunar/orbit.hpp"
#include "cislunar/rng.hpp"
#include "doctest.h"

using namespace cislunar;

namespace {

OrbitalElements circular(double inclination_deg, double raan_deg = 90.0) {
  OrbitalElements el;
  el.semi_major_axis_km = 1837.4;
  el.eccentricity = 0.0;
  el.inclination_deg = inclination_deg;
  el.raan_deg = raan_deg;
  el.arg_perigee_deg = 0.0;
  el.true_anomaly_deg = 0.0;
  return el;
}

double specific_energy(const StateVector& sv, double gm) {
  return 0.5 * dot(sv.velocity_km_s, sv.velocity_km_s) - gm / norm(sv.position_km);
}

}  // namespace

TEST_CASE("elements_to_state polar orbit over raan 90") {
  const StateVector sv = elements_to_state(circular(90.0), kMoonGm);
  CHECK(sv.t_s == 0.0);
  CHECK(std::abs(sv.position_km.x) < 1e-9);
  CHECK(sv.position_km.y == doctest::Approx(1837.4).epsilon(1e-12));
  CHECK(std::abs(sv.position_km.z) < 1e-9);
  const double speed = norm(sv.velocity_km_s);
  CHECK(speed == doctest::Approx(1.6335).epsilon(1e-4));
  CHECK(sv.velocity_km_s.z / speed == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("elements_to_state equatorial orbit is rotation-free") {
  const StateVector sv = elements_to_state(circular(0.0, 0.0), kMoonGm);
  CHECK(sv.position_km.x == 1837.4);
  CHECK(sv.position_km.y == 0.0);
  CHECK(sv.position_km.z == 0.0);
  CHECK(sv.velocity_km_s.x == 0.0);
  CHECK(sv.velocity_km_s.y == doctest::Approx(std::sqrt(kMoonGm / 1837.4)).epsilon(1e-15));
  CHECK(sv.velocity_km_s.z == 0.0);
  CHECK(norm(sv.velocity_km_s) == doctest::Approx(1.6335).epsilon(1e-4));
}

TEST_CASE("circular states have zero radial velocity") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    OrbitalElements el;
    el.semi_major_axis_km = 1800.0 + 400.0 * uniform01(rng);
    el.eccentricity = 0.0;
    el.inclination_deg = 180.0 * uniform01(rng);
    el.raan_deg = 360.0 * uniform01(rng);
    el.arg_perigee_deg = 360.0 * uniform01(rng);
    el.true_anomaly_deg = 360.0 * uniform01(rng);
    const StateVector sv = elements_to_state(el, kMoonGm);
    CHECK(std::abs(dot(sv.position_km, sv.velocity_km_s)) < 1e-9);
  }
}

TEST_CASE("conic radius matches a(1-e^2)/(1+e cos nu)") {
  OrbitalElements el = circular(63.0);
  el.eccentricity = 0.37;
  el.true_anomaly_deg = 141.0;
  const StateVector sv = elements_to_state(el, kMoonGm);
  const double nu = el.true_anomaly_deg * kRadPerDeg;
  const double expected = el.semi_major_axis_km * (1.0 - el.eccentricity * el.eccentricity) /
                          (1.0 + el.eccentricity * std::cos(nu));
  CHECK(norm(sv.position_km) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("elements_to_state rejects open orbits and bad gm") {
  OrbitalElements el = circular(90.0);
  el.eccentricity = 1.0;
  CHECK_THROWS_AS(elements_to_state(el, kMoonGm), std::invalid_argument);
  el.eccentricity = 1.2;
  CHECK_THROWS_AS(elements_to_state(el, kMoonGm), std::invalid_argument);
  el.eccentricity = -0.1;
  CHECK_THROWS_AS(elements_to_state(el, kMoonGm), std::invalid_argument);
  el.eccentricity = 0.0;
  CHECK_THROWS_AS(elements_to_state(el, 0.0), std::invalid_argument);
  el.semi_major_axis_km = -1.0;
  CHECK_THROWS_AS(elements_to_state(el, kMoonGm), std::invalid_argument);
  el = circular(90.0);
  el.inclination_deg = 181.0;
  CHECK_THROWS_AS(elements_to_state(el, kMoonGm), std::invalid_argument);
}

TEST_CASE("solve_kepler residual and input checking") {
  CHECK(solve_kepler(0.0, 0.0) == 0.0);
  CHECK(solve_kepler(1.25, 0.0) == 1.25);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const double m = (uniform01(rng) - 0.5) * 2.0 * kPi;
    const double e = uniform01(rng) * 0.95;
    const double e_anom = solve_kepler(m, e);
    CHECK(std::abs(e_anom - e * std::sin(e_anom) - m) < 1e-12);
  }
  CHECK_THROWS_AS(solve_kepler(0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_kepler(0.5, -0.05), std::invalid_argument);
}

TEST_CASE("propagate at t=0 equals elements_to_state") {
  OrbitalElements el = circular(80.0);
  el.eccentricity = 0.21;
  el.true_anomaly_deg = 77.0;
  const StateVector a = elements_to_state(el, kMoonGm);
  const StateVector b = propagate(el, kMoonGm, 0.0);
  CHECK(a.position_km == b.position_km);
  CHECK(a.velocity_km_s == b.velocity_km_s);
}

TEST_CASE("propagate is periodic for circular orbits") {
  const OrbitalElements el = circular(84.0);
  const double period = orbital_period_s(el, kMoonGm);
  CHECK(period == doctest::Approx(7067.0).epsilon(2e-4));  // about 2 hours
  const StateVector s0 = propagate(el, kMoonGm, 0.0);
  const StateVector s1 = propagate(el, kMoonGm, period);
  CHECK(norm(s1.position_km - s0.position_km) < 1e-6);
  CHECK(norm(s1.velocity_km_s - s0.velocity_km_s) < 1e-9);
}

TEST_CASE("half period reaches the antipode for circular equatorial orbits") {
  const OrbitalElements el = circular(0.0, 0.0);
  const double period = orbital_period_s(el, kMoonGm);
  const StateVector s0 = propagate(el, kMoonGm, 0.0);
  const StateVector half = propagate(el, kMoonGm, period / 2.0);
  CHECK(norm(half.position_km + s0.position_km) < 1e-6);
}

TEST_CASE("raan shifted by 360 degrees leaves the state unchanged") {
  OrbitalElements el = circular(97.0, 34.0);
  el.eccentricity = 0.05;
  OrbitalElements shifted = el;
  shifted.raan_deg += 360.0;
  const StateVector a = propagate(el, kMoonGm, 4321.0);
  const StateVector b = propagate(shifted, kMoonGm, 4321.0);
  CHECK(norm(a.position_km - b.position_km) < 1e-9);
  CHECK(norm(a.velocity_km_s - b.velocity_km_s) < 1e-9);
}

TEST_CASE("make_ephemeris sampling grid") {
  const OrbitalElements el = circular(80.0);
  const Ephemeris day = make_ephemeris(el, kMoonGm, 86400.0, 10.0);
  CHECK(day.states.size() == 8641);
  CHECK(day.sample_interval_s == 10.0);
  for (std::size_t i = 0; i < day.states.size(); ++i) CHECK(day.states[i].t_s == 10.0 * static_cast<double>(i));

  const Ephemeris pair = make_ephemeris(el, kMoonGm, 10.0, 10.0);
  CHECK(pair.states.size() == 2);

  // Grid entries are the same propagation the scalar op performs.
  const StateVector direct = propagate(el, kMoonGm, 500.0);
  CHECK(day.states[50].position_km == direct.position_km);
  CHECK(day.states[50].velocity_km_s == direct.velocity_km_s);
}

TEST_CASE("make_ephemeris rejects bad sampling parameters") {
  const OrbitalElements el = circular(90.0);
  CHECK_THROWS_AS(make_ephemeris(el, kMoonGm, 0.0, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(make_ephemeris(el, kMoonGm, -5.0, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(make_ephemeris(el, kMoonGm, 100.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_ephemeris(el, kMoonGm, 100.0, 200.0), std::invalid_argument);
}

TEST_CASE("energy and angular momentum are conserved along an ephemeris") {
  OrbitalElements el = circular(86.0);
  el.semi_major_axis_km = 3000.0;  // perilune 2700 km, clear of the surface
  el.eccentricity = 0.1;
  el.true_anomaly_deg = 30.0;
  const Ephemeris eph = make_ephemeris(el, kMoonGm, 86400.0, 60.0);
  const double energy0 = specific_energy(eph.states.front(), kMoonGm);
  const double h0 = norm(cross(eph.states.front().position_km, eph.states.front().velocity_km_s));
  for (const StateVector& sv : eph.states) {
    CHECK(std::abs(specific_energy(sv, kMoonGm) - energy0) / std::abs(energy0) < 1e-9);
    CHECK(std::abs(norm(cross(sv.position_km, sv.velocity_km_s)) - h0) / h0 < 1e-9);
    CHECK(norm(sv.position_km) >= kMoonRadiusKm);
  }
}
