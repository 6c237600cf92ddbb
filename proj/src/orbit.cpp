#include "cislunar/orbit.hpp"

#include <cmath>
#include <stdexcept>

#include "cislunar/constants.hpp"
#include "cislunar/kernels.hpp"

namespace cislunar {

void OrbitalElements::validate() const {
  if (!(semi_major_axis_km > 0.0) || !std::isfinite(semi_major_axis_km))
    throw std::invalid_argument("OrbitalElements: semi_major_axis_km must be positive");
  if (!(eccentricity >= 0.0 && eccentricity < 1.0))
    throw std::invalid_argument("OrbitalElements: eccentricity must be in [0,1)");
  if (!std::isfinite(inclination_deg) || inclination_deg < 0.0 || inclination_deg > 180.0)
    throw std::invalid_argument("OrbitalElements: inclination_deg must be in [0,180]");
  for (double ang : {raan_deg, arg_perigee_deg, true_anomaly_deg}) {
    if (!std::isfinite(ang)) throw std::invalid_argument("OrbitalElements: angles must be finite");
  }
}

double orbital_period_s(const OrbitalElements& el, double gm) {
  el.validate();
  if (!(gm > 0.0)) throw std::invalid_argument("orbital_period_s: gm must be positive");
  const double a = el.semi_major_axis_km;
  return 2.0 * kPi * std::sqrt(a * a * a / gm);
}

double solve_kepler(double mean_anomaly_rad, double eccentricity) {
  if (!(eccentricity >= 0.0 && eccentricity < 1.0))
    throw std::invalid_argument("solve_kepler: eccentricity must be in [0,1)");
  if (!std::isfinite(mean_anomaly_rad)) throw std::invalid_argument("solve_kepler: mean anomaly must be finite");
  double e_anom = mean_anomaly_rad;
  for (int i = 0; i < 50; ++i) {
    const double f = e_anom - eccentricity * std::sin(e_anom) - mean_anomaly_rad;
    if (std::abs(f) < 1e-12) return e_anom;
    e_anom -= f / (1.0 - eccentricity * std::cos(e_anom));
  }
  if (std::abs(e_anom - eccentricity * std::sin(e_anom) - mean_anomaly_rad) < 1e-12) return e_anom;
  throw std::runtime_error("solve_kepler: Newton iteration did not converge in 50 steps");
}

KeplerOrbit make_orbit(const OrbitalElements& el, double gm) {
  el.validate();
  if (!(gm > 0.0) || !std::isfinite(gm)) throw std::invalid_argument("make_orbit: gm must be positive");

  const double a = el.semi_major_axis_km;
  const double e = el.eccentricity;
  const double i = el.inclination_deg * kRadPerDeg;
  const double raan = el.raan_deg * kRadPerDeg;
  const double argp = el.arg_perigee_deg * kRadPerDeg;
  const double nu = el.true_anomaly_deg * kRadPerDeg;

  const double co = std::cos(raan), so = std::sin(raan);
  const double ci = std::cos(i), si = std::sin(i);
  const double cw = std::cos(argp), sw = std::sin(argp);

  KeplerOrbit orbit;
  orbit.gm = gm;
  orbit.semi_major_axis_km = a;
  orbit.eccentricity = e;
  orbit.mean_motion_rad_s = std::sqrt(gm / (a * a * a));
  // Perifocal basis columns of R_z(raan) R_x(i) R_z(argp).
  orbit.p_hat = {co * cw - so * sw * ci, so * cw + co * sw * ci, sw * si};
  orbit.q_hat = {-co * sw - so * cw * ci, -so * sw + co * cw * ci, cw * si};

  const double e_anom0 = 2.0 * std::atan2(std::sqrt(1.0 - e) * std::sin(nu / 2.0),
                                          std::sqrt(1.0 + e) * std::cos(nu / 2.0));
  orbit.mean_anomaly0_rad = e_anom0 - e * std::sin(e_anom0);
  return orbit;
}

StateVector KeplerOrbit::at(double t_s) const {
  if (!std::isfinite(t_s)) throw std::invalid_argument("KeplerOrbit::at: time must be finite");
  // Wrapping into [-pi, pi] keeps the Newton iterate well conditioned for
  // arbitrarily large epochs.
  const double mean_anomaly = std::remainder(mean_anomaly0_rad + mean_motion_rad_s * t_s, 2.0 * kPi);
  const double e_anom = solve_kepler(mean_anomaly, eccentricity);

  const double ce = std::cos(e_anom), se = std::sin(e_anom);
  const double rho = std::sqrt(1.0 - eccentricity * eccentricity);
  const double a = semi_major_axis_km;
  const double r = a * (1.0 - eccentricity * ce);

  StateVector sv;
  sv.t_s = t_s;
  sv.position_km = a * ((ce - eccentricity) * p_hat + rho * se * q_hat);
  sv.velocity_km_s = (std::sqrt(gm * a) / r) * (-se * p_hat + rho * ce * q_hat);
  return sv;
}

StateVector elements_to_state(const OrbitalElements& el, double gm) { return make_orbit(el, gm).at(0.0); }

StateVector propagate(const OrbitalElements& el, double gm, double t_s) { return make_orbit(el, gm).at(t_s); }

Ephemeris make_ephemeris(const OrbitalElements& el, double gm, double duration_s, double sample_interval_s) {
  if (!(duration_s > 0.0)) throw std::invalid_argument("make_ephemeris: duration_s must be positive");
  if (!(sample_interval_s > 0.0)) throw std::invalid_argument("make_ephemeris: sample_interval_s must be positive");
  if (sample_interval_s > duration_s) throw std::invalid_argument("make_ephemeris: sample_interval_s exceeds duration_s");

  const KeplerOrbit orbit = make_orbit(el, gm);
  const auto count = static_cast<std::size_t>(std::floor(duration_s / sample_interval_s)) + 1;

  Ephemeris eph;
  eph.sample_interval_s = sample_interval_s;
  eph.states.resize(count);
  kernels::propagate_grid_parallel(orbit, sample_interval_s, eph.states);
  return eph;
}

}  // namespace cislunar
