#include "vanet/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vanet {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

}  // namespace

bool is_valid(const GeoCoordinate& c) noexcept {
  return std::isfinite(c.lat_deg) && std::isfinite(c.lon_deg) && c.lat_deg >= -90.0 &&
         c.lat_deg <= 90.0 && c.lon_deg >= -180.0 && c.lon_deg <= 180.0;
}

double haversine_m(const GeoCoordinate& a, const GeoCoordinate& b) noexcept {
  if (a == b) return 0.0;
  const double lat1 = a.lat_deg * kDegToRad;
  const double lat2 = b.lat_deg * kDegToRad;
  const double dlat = lat2 - lat1;
  const double dlon = (b.lon_deg - a.lon_deg) * kDegToRad;
  const double s_lat = std::sin(dlat / 2.0);
  const double s_lon = std::sin(dlon / 2.0);
  double h = s_lat * s_lat + std::cos(lat1) * std::cos(lat2) * s_lon * s_lon;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

GeoCoordinate offset_along_bearing(const GeoCoordinate& origin, double bearing_deg,
                                   double distance_m) noexcept {
  if (distance_m == 0.0) return origin;
  const double bearing = bearing_deg * kDegToRad;
  const double north_m = distance_m * std::cos(bearing);
  const double east_m = distance_m * std::sin(bearing);
  const double lat = origin.lat_deg + north_m / kEarthRadiusM * kRadToDeg;
  const double cos_lat0 = std::cos(origin.lat_deg * kDegToRad);
  double lon = origin.lon_deg;
  if (cos_lat0 > 1e-12) lon += east_m / (kEarthRadiusM * cos_lat0) * kRadToDeg;
  if (lon >= 180.0 || lon < -180.0) lon = std::remainder(lon, 360.0);
  if (lon == 180.0) lon = -180.0;
  return {std::clamp(lat, -90.0, 90.0), lon};
}

}  // namespace vanet
