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

#include "v2x/geo.hpp"

#include <cmath>
#include <numbers>

namespace v2x::geo {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kMaxRefLatDeg = 89.0;  // keep cos(ref.lat) well away from zero

void check_point(const GeoPoint& p, const char* name) {
  if (!std::isfinite(p.lat_deg) || !std::isfinite(p.lon_deg) || !std::isfinite(p.elev_m) ||
      std::abs(p.lat_deg) > 90.0 || std::abs(p.lon_deg) > 180.0) {
    throw OutOfValidity(std::string(name) + " is not a valid geographic point");
  }
}

}  // namespace

LocalPoint to_local(const GeoPoint& ref, const GeoPoint& p) {
  check_point(ref, "ref");
  check_point(p, "point");
  if (std::abs(ref.lat_deg) > kMaxRefLatDeg) {
    throw OutOfValidity("reference latitude too close to a pole");
  }
  const double dlat = p.lat_deg - ref.lat_deg;
  const double dlon = p.lon_deg - ref.lon_deg;
  if (std::abs(dlat) >= 1.0 || std::abs(dlon) >= 1.0) {
    throw OutOfValidity("point outside the 1-degree projection window");
  }
  return LocalPoint{
      dlon * kDegToRad * kEarthRadiusM * std::cos(ref.lat_deg * kDegToRad),
      dlat * kDegToRad * kEarthRadiusM,
      p.elev_m - ref.elev_m,
  };
}

GeoPoint from_local(const GeoPoint& ref, const LocalPoint& lp) {
  check_point(ref, "ref");
  if (std::abs(ref.lat_deg) > kMaxRefLatDeg) {
    throw OutOfValidity("reference latitude too close to a pole");
  }
  if (!std::isfinite(lp.east_m) || !std::isfinite(lp.north_m) || !std::isfinite(lp.up_m) ||
      std::hypot(lp.east_m, lp.north_m) >= 100000.0) {
    throw OutOfValidity("local offset outside the 100 km validity window");
  }
  return GeoPoint{
      ref.lat_deg + lp.north_m / (kDegToRad * kEarthRadiusM),
      ref.lon_deg + lp.east_m / (kDegToRad * kEarthRadiusM * std::cos(ref.lat_deg * kDegToRad)),
      ref.elev_m + lp.up_m,
  };
}

double bearing_deg(const LocalPoint& from, const LocalPoint& to) {
  const double de = to.east_m - from.east_m;
  const double dn = to.north_m - from.north_m;
  if (de == 0.0 && dn == 0.0) {
    throw DegenerateSegment("bearing of coincident points");
  }
  return wrap_deg(std::atan2(de, dn) / kDegToRad);
}

double horizontal_distance_m(const LocalPoint& a, const LocalPoint& b) {
  return std::hypot(b.east_m - a.east_m, b.north_m - a.north_m);
}

double wrap_deg(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w < 0.0) {
    w += 360.0;
  }
  return w;
}

double angular_separation_deg(double a_deg, double b_deg) {
  const double d = std::abs(wrap_deg(a_deg) - wrap_deg(b_deg));
  return d > 180.0 ? 360.0 - d : d;
}

}  // namespace v2x::geo
