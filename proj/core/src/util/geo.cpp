#include "ctfrec/util/geo.hpp"

#include <cmath>

namespace ctfrec::util {

namespace {
constexpr double kEarthRadius = 6378137.0;
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kDegToRad = kPi / 180.0;
}  // namespace

XY mercator(double lat_deg, double lon_deg) {
  XY p;
  p.x = kEarthRadius * lon_deg * kDegToRad;
  p.y = kEarthRadius * std::log(std::tan(kPi / 4.0 + lat_deg * kDegToRad / 2.0));
  return p;
}

void mercator_inverse(const XY& p, double& lat_deg, double& lon_deg) {
  lon_deg = p.x / kEarthRadius / kDegToRad;
  lat_deg = (2.0 * std::atan(std::exp(p.y / kEarthRadius)) - kPi / 2.0) / kDegToRad;
}

double dist(const XY& a, const XY& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace ctfrec::util
