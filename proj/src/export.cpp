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

#include "v2x/export.hpp"

#include <sstream>

#include "v2x/textfmt.hpp"

namespace v2x::j2735 {

using textfmt::fixed;
using textfmt::hex_id;
using textfmt::trimmed;

std::string bsm_to_csv(std::span<const TimedBsm> frames) {
  std::string out =
      "timestamp,id_hex,msg_count,sec_mark_ms,lat_deg,lon_deg,elev_m,speed_mps,"
      "heading_deg,role\n";
  for (const TimedBsm& f : frames) {
    const BsmCore& b = f.bsm;
    out += trimmed(f.timestamp_s, 6);
    out += ',';
    out += hex_id(b.temporary_id);
    out += ',';
    out += std::to_string(b.msg_count);
    out += ',';
    out += std::to_string(b.sec_mark);
    out += ',';
    if (b.latitude != kLatUnavailable) out += trimmed(b.lat_deg(), 7);
    out += ',';
    if (b.longitude != kLonUnavailable) out += trimmed(b.lon_deg(), 7);
    out += ',';
    if (b.elevation != kElevUnavailable) out += trimmed(b.elev_m(), 1);
    out += ',';
    if (b.has_speed()) out += trimmed(b.speed_mps(), 2);
    out += ',';
    if (b.has_heading()) out += trimmed(b.heading_deg(), 4);
    out += ',';
    out += to_string(b.role);
    out += '\n';
  }
  return out;
}

std::string map_to_text(const MapData& map) {
  std::ostringstream out;
  out << "MapData {\n";
  out << "  intersectionId " << map.intersection_id << "\n";
  out << "  refPoint {\n";
  out << "    lat " << map.ref_point.latitude << " -- "
      << fixed(map.ref_point.latitude * kLatLonDegPerCount, 7) << " deg\n";
  out << "    long " << map.ref_point.longitude << " -- "
      << fixed(map.ref_point.longitude * kLatLonDegPerCount, 7) << " deg\n";
  out << "    elev " << map.ref_point.elevation << " -- "
      << fixed(map.ref_point.elevation * kElevMetersPerCount, 1) << " m\n";
  out << "  }\n";
  out << "  laneWidth " << map.lane_width_cm << " -- "
      << fixed(map.lane_width_cm / 100.0, 2) << " m\n";
  out << "  lanes {\n";
  for (const Lane& lane : map.lanes) {
    out << "    lane {\n";
    out << "      laneId " << int(lane.lane_id) << "\n";
    out << "      laneType " << to_string(lane.lane_type) << "\n";
    out << "      nodes {\n";
    for (const NodeXY& n : lane.nodes) {
      out << "        nodeXY { x " << n.x_cm << ", y " << n.y_cm << " }\n";
    }
    out << "      }\n";
    out << "    }\n";
  }
  out << "  }\n";
  out << "}\n";
  return out.str();
}

}  // namespace v2x::j2735
