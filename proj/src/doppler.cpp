#include "cislunar/doppler.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "cislunar/constants.hpp"
#include "cislunar/kernels.hpp"

namespace cislunar {

void GroundStation::validate() const {
  if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0))
    throw std::invalid_argument("GroundStation: latitude_deg must be in [-90,90]");
  if (!(longitude_deg >= -180.0 && longitude_deg < 360.0))
    throw std::invalid_argument("GroundStation: longitude_deg must be in [-180,360)");
  if (!(radius_km > 0.0) || !std::isfinite(radius_km))
    throw std::invalid_argument("GroundStation: radius_km must be positive");
}

std::vector<double> DopplerSeries::visible_ppm() const {
  std::vector<double> out;
  out.reserve(ppm.size());
  for (std::size_t i = 0; i < ppm.size(); ++i) {
    if (visible[i]) out.push_back(ppm[i]);
  }
  return out;
}

double range_rate(const StateVector& a, const StateVector& b) {
  if (a.t_s != b.t_s) throw std::invalid_argument("range_rate: states must share an epoch");
  const Vec3 dr = b.position_km - a.position_km;
  const double dist = norm(dr);
  if (dist == 0.0) throw std::invalid_argument("range_rate: coincident positions have no line of sight");
  return dot(b.velocity_km_s - a.velocity_km_s, dr) / dist;
}

double ppm_from_range_rate(double range_rate_km_s) {
  if (!std::isfinite(range_rate_km_s)) throw std::invalid_argument("ppm_from_range_rate: range rate must be finite");
  return -range_rate_km_s / kSpeedOfLightKmS * 1e6;
}

double signed_doppler_ppm(const StateVector& a, const StateVector& b) {
  const Vec3 dr = b.position_km - a.position_km;
  const double dist = norm(dr);
  if (dist == 0.0) return 0.0;
  const Vec3 dv = b.velocity_km_s - a.velocity_km_s;
  const double los_rate = dot(dv, dr) / dist;
  const double speed = norm(dv);
  return (los_rate > 0.0 ? -speed : speed) / kSpeedOfLightKmS * 1e6;
}

double doppler_hz(double ppm, double carrier_hz) {
  if (!(carrier_hz > 0.0)) throw std::invalid_argument("doppler_hz: carrier_hz must be positive");
  return ppm * 1e-6 * carrier_hz;
}

StateVector gs_state(const GroundStation& gs) {
  gs.validate();
  const double lat = gs.latitude_deg * kRadPerDeg;
  const double lon = gs.longitude_deg * kRadPerDeg;
  StateVector sv;
  sv.t_s = 0.0;
  sv.position_km = gs.radius_km * Vec3{std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
  sv.velocity_km_s = {0.0, 0.0, 0.0};
  return sv;
}

double elevation_deg(const GroundStation& gs, const Vec3& position_km) {
  if (norm(position_km) <= gs.radius_km)
    throw std::invalid_argument("elevation_deg: satellite below the surface sphere");
  const Vec3 site = gs_state(gs).position_km;
  const Vec3 up = normalized(site);
  const Vec3 slant = position_km - site;
  const double cos_zenith = dot(up, slant) / norm(slant);
  return 90.0 - std::acos(std::clamp(cos_zenith, -1.0, 1.0)) * kDegPerRad;
}

namespace {

void check_common_grid(const Ephemeris& a, const Ephemeris& b) {
  if (a.states.empty() || b.states.empty()) throw std::invalid_argument("doppler series: empty ephemeris");
  if (a.states.size() != b.states.size() || a.sample_interval_s != b.sample_interval_s)
    throw std::invalid_argument("doppler series: ephemerides must share the time grid");
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    if (a.states[i].t_s != b.states[i].t_s)
      throw std::invalid_argument("doppler series: ephemerides must share the time grid");
  }
}

}  // namespace

DopplerSeries isl_doppler_series(const Ephemeris& a, const Ephemeris& b, std::string link_id) {
  check_common_grid(a, b);
  const std::size_t n = a.states.size();

  DopplerSeries out;
  out.link_id = std::move(link_id);
  out.t_s.resize(n);
  out.ppm.resize(n);
  out.visible.assign(n, 1);
  for (std::size_t i = 0; i < n; ++i) out.t_s[i] = a.states[i].t_s;
  kernels::doppler_grid_parallel(a.states, b.states, out.ppm);
  return out;
}

DopplerSeries gs_doppler_series(const Ephemeris& sat, const GroundStation& gs, double min_elevation_deg,
                                std::string link_id) {
  if (sat.states.empty()) throw std::invalid_argument("gs_doppler_series: empty ephemeris");
  if (!std::isfinite(min_elevation_deg))
    throw std::invalid_argument("gs_doppler_series: min_elevation_deg must be finite");
  const StateVector site = gs_state(gs);
  const std::size_t n = sat.states.size();

  std::vector<StateVector> site_states(n, site);
  for (std::size_t i = 0; i < n; ++i) site_states[i].t_s = sat.states[i].t_s;

  DopplerSeries out;
  out.link_id = std::move(link_id);
  out.t_s.resize(n);
  out.ppm.resize(n);
  out.visible.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) out.t_s[i] = sat.states[i].t_s;
  kernels::doppler_grid_parallel(sat.states, site_states, out.ppm);

  for (std::size_t i = 0; i < n; ++i) {
    if (elevation_deg(gs, sat.states[i].position_km) >= min_elevation_deg) {
      out.visible[i] = 1;
    } else {
      out.ppm[i] = 0.0;  // masked sample carries no Doppler value
    }
  }
  return out;
}

}  // namespace cislunar
