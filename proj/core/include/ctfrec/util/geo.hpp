#pragma once

namespace ctfrec::util {

struct XY {
  double x = 0.0;
  double y = 0.0;
};

// Spherical Mercator projection (meters). Adequate for fields a few hundred
// meters across; distortion at mid latitudes is uniform over such an area, so
// relative distances are preserved.
XY mercator(double lat_deg, double lon_deg);
void mercator_inverse(const XY& p, double& lat_deg, double& lon_deg);

double dist(const XY& a, const XY& b);

}  // namespace ctfrec::util
