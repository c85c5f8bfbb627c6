#pragma once

#include <cstdint>

namespace vanet {

using Tick = std::int64_t;

/// Mean Earth radius used by every geographic computation in the library.
inline constexpr double kEarthRadiusM = 6'371'000.0;

struct GeoCoordinate {
  double lat_deg = 0.0;
  double lon_deg = 0.0;

  friend bool operator==(const GeoCoordinate&, const GeoCoordinate&) = default;
};

/// True when both fields are finite and within [-90, 90] / [-180, 180].
bool is_valid(const GeoCoordinate& c) noexcept;

/// Great-circle distance in meters on a sphere of radius kEarthRadiusM.
double haversine_m(const GeoCoordinate& a, const GeoCoordinate& b) noexcept;

/// Local equirectangular offset: moves `distance_m` from `origin` along
/// `bearing_deg` (clockwise from north). Longitude is wrapped to [-180, 180).
GeoCoordinate offset_along_bearing(const GeoCoordinate& origin, double bearing_deg,
                                   double distance_m) noexcept;

}  // namespace vanet
