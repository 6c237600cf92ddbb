#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cislunar/orbit.hpp"

namespace cislunar {

// Selenographic site on a sphere of the given radius. The body is treated as
// non-rotating, so the site is fixed in the inertial frame.
struct GroundStation {
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  double radius_km = 0.0;

  bool operator==(const GroundStation&) const = default;

  void validate() const;
};

// Per-sample Doppler history for one link. visible[i] is 0/1; ppm entries for
// non-visible samples are 0.
struct DopplerSeries {
  std::string link_id;
  std::vector<double> t_s;
  std::vector<double> ppm;
  std::vector<std::uint8_t> visible;

  std::size_t size() const { return t_s.size(); }
  std::vector<double> visible_ppm() const;
};

// Line-of-sight range rate d|r_b - r_a|/dt [km/s], positive when opening.
// Throws std::invalid_argument on coincident positions.
double range_rate(const StateVector& a, const StateVector& b);

// Doppler shift in ppm of the carrier for a given range rate; approaching
// (negative range rate) gives positive ppm.
double ppm_from_range_rate(double range_rate_km_s);

// Signed Doppler in ppm from the full relative speed |v_b - v_a|, signed by
// the sense of the line-of-sight motion. Coincident positions map to 0.
double signed_doppler_ppm(const StateVector& a, const StateVector& b);

// Absolute shift in Hz for a carrier at carrier_hz.
double doppler_hz(double ppm, double carrier_hz);

// Inertial state of the site; zero velocity.
StateVector gs_state(const GroundStation& gs);

// Elevation of a point above the site's local horizon plane [deg].
double elevation_deg(const GroundStation& gs, const Vec3& position_km);

// Doppler between two satellites on a common time grid; every sample is
// visible. Throws std::invalid_argument on mismatched grids.
DopplerSeries isl_doppler_series(const Ephemeris& a, const Ephemeris& b, std::string link_id = {});

// Doppler between a satellite and a ground station; samples below
// min_elevation_deg get visible = 0 and ppm = 0.
DopplerSeries gs_doppler_series(const Ephemeris& sat, const GroundStation& gs, double min_elevation_deg,
                                std::string link_id = {});

}  // namespace cislunar
