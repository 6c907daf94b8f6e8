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

#include "v2x/errors.hpp"

namespace v2x::geo {

/// Spherical radius used by the small-area projection (meters).
inline constexpr double kEarthRadiusM = 6378137.0;

struct GeoPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double elev_m = 0.0;

  bool operator==(const GeoPoint&) const = default;
};

/// East-North-Up offsets (meters) from a reference point.
struct LocalPoint {
  double east_m = 0.0;
  double north_m = 0.0;
  double up_m = 0.0;

  bool operator==(const LocalPoint&) const = default;
};

class OutOfValidity : public Error {
public:
  using Error::Error;
};

class DegenerateSegment : public Error {
public:
  using Error::Error;
};

/// Equirectangular small-area projection about `ref`:
///   east  = dlon * (pi/180) * R * cos(ref.lat)
///   north = dlat * (pi/180) * R
///   up    = delev
/// Valid for |dlat| < 1 deg and |dlon| < 1 deg; throws OutOfValidity outside.
LocalPoint to_local(const GeoPoint& ref, const GeoPoint& p);

/// Inverse of to_local (within 1e-6 m for |lp| < 100 km).
GeoPoint from_local(const GeoPoint& ref, const LocalPoint& lp);

/// Compass bearing of the segment from -> to: 0 = north, 90 = east,
/// result in [0, 360). Throws DegenerateSegment for coincident points.
double bearing_deg(const LocalPoint& from, const LocalPoint& to);

/// Horizontal (east/north plane) distance in meters.
double horizontal_distance_m(const LocalPoint& a, const LocalPoint& b);

/// Normalize an angle in degrees to [0, 360).
double wrap_deg(double deg);

/// Smallest absolute angular separation of two bearings, in [0, 180].
double angular_separation_deg(double a_deg, double b_deg);

}  // namespace v2x::geo
