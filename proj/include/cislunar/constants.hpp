#pragma once

#include <numbers>

namespace cislunar {

// Lunar gravitational parameter [km^3/s^2] and mean radius [km].
inline constexpr double kMoonGm = 4902.800066;
inline constexpr double kMoonRadiusKm = 1737.4;

// Speed of light [km/s].
inline constexpr double kSpeedOfLightKmS = 299792.458;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kDegPerRad = 180.0 / kPi;
inline constexpr double kRadPerDeg = kPi / 180.0;

}  // namespace cislunar
