#pragma once

#include <cstddef>
#include <vector>

#include "cislunar/geometry.hpp"

namespace cislunar {

// Classical elements for a bound two-body orbit. Angles in degrees, lengths
// in km. Anomaly is the true anomaly at epoch t = 0.
struct OrbitalElements {
  double semi_major_axis_km = 0.0;
  double eccentricity = 0.0;
  double inclination_deg = 0.0;
  double raan_deg = 0.0;
  double arg_perigee_deg = 0.0;
  double true_anomaly_deg = 0.0;

  bool operator==(const OrbitalElements&) const = default;

  // Throws std::invalid_argument on a > 0 / 0 <= e < 1 violations or
  // non-finite angles.
  void validate() const;
};

struct StateVector {
  double t_s = 0.0;
  Vec3 position_km;
  Vec3 velocity_km_s;
};

// Fixed-step state history, states[i].t_s == i * sample_interval_s.
struct Ephemeris {
  double sample_interval_s = 0.0;
  std::vector<StateVector> states;
};

// Propagation context with the epoch anomaly and perifocal basis resolved
// once; at(t) costs one Kepler solve.
struct KeplerOrbit {
  double gm = 0.0;
  double semi_major_axis_km = 0.0;
  double eccentricity = 0.0;
  double mean_motion_rad_s = 0.0;
  double mean_anomaly0_rad = 0.0;
  Vec3 p_hat;  // perifocal x axis (toward perigee) in inertial frame
  Vec3 q_hat;  // perifocal y axis in inertial frame

  StateVector at(double t_s) const;
};

double orbital_period_s(const OrbitalElements& el, double gm);

// Eccentric anomaly E with E - e sin E = M, Newton iteration from E0 = M,
// |f| tolerance 1e-12 rad, at most 50 steps. Throws std::invalid_argument
// for e outside [0,1) and std::runtime_error on non-convergence.
double solve_kepler(double mean_anomaly_rad, double eccentricity);

KeplerOrbit make_orbit(const OrbitalElements& el, double gm);

StateVector elements_to_state(const OrbitalElements& el, double gm);

StateVector propagate(const OrbitalElements& el, double gm, double t_s);

// Samples t = 0, dt, ..., floor(duration/dt)*dt inclusive.
Ephemeris make_ephemeris(const OrbitalElements& el, double gm, double duration_s, double sample_interval_s);

}  // namespace cislunar
