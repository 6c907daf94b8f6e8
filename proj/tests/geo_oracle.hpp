// Copyright 2026 The v2xkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Test-side geodesy oracle: textbook great-circle formulas on a sphere of
// radius 6378137 m (haversine distance, initial bearing, destination
// point). Kept independent of the library's projection code on purpose.

#include <cmath>

namespace geo_oracle {

inline constexpr double kRadius = 6378137.0;
inline constexpr double kPi = 3.14159265358979323846;

inline double rad(double deg) { return deg * kPi / 180.0; }
inline double deg(double r) { return r * 180.0 / kPi; }

/// Great-circle distance between two lat/lon points (haversine form).
inline double distance_m(double lat1, double lon1, double lat2, double lon2) {
  const double phi1 = rad(lat1), phi2 = rad(lat2);
  const double dphi = rad(lat2 - lat1), dlam = rad(lon2 - lon1);
  const double a = std::sin(dphi / 2) * std::sin(dphi / 2) +
                   std::cos(phi1) * std::cos(phi2) * std::sin(dlam / 2) * std::sin(dlam / 2);
  return 2.0 * kRadius * std::asin(std::min(1.0, std::sqrt(a)));
}

/// Initial compass bearing of the great circle from point 1 to point 2.
inline double initial_bearing_deg(double lat1, double lon1, double lat2, double lon2) {
  const double phi1 = rad(lat1), phi2 = rad(lat2), dlam = rad(lon2 - lon1);
  const double y = std::sin(dlam) * std::cos(phi2);
  const double x =
      std::cos(phi1) * std::sin(phi2) - std::sin(phi1) * std::cos(phi2) * std::cos(dlam);
  double b = deg(std::atan2(y, x));
  if (b < 0) {
    b += 360.0;
  }
  return b;
}

/// Destination point after `dist_m` along `bearing_deg` from a start point.
inline void destination(double lat1, double lon1, double bearing_deg, double dist_m,
                        double& lat2, double& lon2) {
  const double delta = dist_m / kRadius;
  const double theta = rad(bearing_deg);
  const double phi1 = rad(lat1), lam1 = rad(lon1);
  const double phi2 = std::asin(std::sin(phi1) * std::cos(delta) +
                                std::cos(phi1) * std::sin(delta) * std::cos(theta));
  const double lam2 =
      lam1 + std::atan2(std::sin(theta) * std::sin(delta) * std::cos(phi1),
                        std::cos(delta) - std::sin(phi1) * std::sin(phi2));
  lat2 = deg(phi2);
  lon2 = deg(lam2);
}

}  // namespace geo_oracle
