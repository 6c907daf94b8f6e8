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

#include "v2x/j2735.hpp"

#include <set>
#include <sstream>

#include "v2x/uper.hpp"

namespace v2x::j2735 {

namespace {

// Field ranges of the frozen message subset. The wire layout is fully
// determined by these bounds: each field is a constrained whole number,
// enumeration, or fixed octet string, and each list carries a
// size-constrained length determinant.
constexpr std::int64_t kMsgCountMax = 127;
constexpr std::int64_t kSecMarkMax = 65535;
constexpr std::int64_t kLatMin = -900000000, kLatMax = 900000001;
constexpr std::int64_t kLonMin = -1799999999, kLonMax = 1800000001;
constexpr std::int64_t kElevMin = -4096, kElevMax = 61439;
constexpr std::int64_t kSpeedMax = 8191;
constexpr std::int64_t kHeadingMax = 28800;
constexpr unsigned kRoleCount = 4;
constexpr unsigned kEventCount = 6;
constexpr unsigned kLaneKindCount = 2;
constexpr std::int64_t kIntersectionIdMax = 65535;
constexpr std::int64_t kRevisionMax = 127;
constexpr std::int64_t kSignalGroupMin = 1, kSignalGroupMax = 255;
constexpr std::int64_t kMinEndTimeMax = 36001;
constexpr std::int64_t kLaneWidthMax = 32767;
constexpr std::int64_t kLaneIdMax = 255;
constexpr std::int64_t kNodeMin = -32768, kNodeMax = 32767;
constexpr std::size_t kMovementsMin = 1, kMovementsMax = 255;
constexpr std::size_t kLanesMin = 1, kLanesMax = 255;
constexpr std::size_t kNodesMin = 2, kNodesMax = 63;

void check_range(std::ostringstream& err, const char* field, std::int64_t value,
                 std::int64_t lo, std::int64_t hi) {
  if (err.tellp() != 0) {
    return;  // first violation wins
  }
  if (value < lo || value > hi) {
    err << field << " = " << value << " outside [" << lo << ", " << hi << "]";
  }
}

void validate(std::ostringstream& err, const BsmCore& b) {
  check_range(err, "msg_count", b.msg_count, 0, kMsgCountMax);
  check_range(err, "sec_mark", b.sec_mark, 0, kSecMarkMax);
  check_range(err, "latitude", b.latitude, kLatMin, kLatMax);
  check_range(err, "longitude", b.longitude, kLonMin, kLonMax);
  check_range(err, "elevation", b.elevation, kElevMin, kElevMax);
  check_range(err, "speed", b.speed, 0, kSpeedMax);
  check_range(err, "heading", b.heading, 0, kHeadingMax);
  check_range(err, "role", static_cast<int>(b.role), 0, kRoleCount - 1);
}

void validate(std::ostringstream& err, const SpatData& s) {
  check_range(err, "intersection_id", s.intersection_id, 0, kIntersectionIdMax);
  check_range(err, "revision", s.revision, 0, kRevisionMax);
  if (err.tellp() == 0 &&
      (s.movements.size() < kMovementsMin || s.movements.size() > kMovementsMax)) {
    err << "movements count " << s.movements.size() << " outside [" << kMovementsMin
        << ", " << kMovementsMax << "]";
  }
  std::set<std::uint8_t> groups;
  for (const MovementState& m : s.movements) {
    check_range(err, "signal_group", m.signal_group, kSignalGroupMin, kSignalGroupMax);
    check_range(err, "event_state", static_cast<int>(m.event_state), 0, kEventCount - 1);
    check_range(err, "min_end_time", m.min_end_time, 0, kMinEndTimeMax);
    if (err.tellp() == 0 && !groups.insert(m.signal_group).second) {
      err << "signal_group " << int(m.signal_group) << " duplicated";
    }
  }
}

void validate(std::ostringstream& err, const MapData& m) {
  check_range(err, "intersection_id", m.intersection_id, 0, kIntersectionIdMax);
  check_range(err, "ref_point.latitude", m.ref_point.latitude, kLatMin, kLatMax);
  check_range(err, "ref_point.longitude", m.ref_point.longitude, kLonMin, kLonMax);
  check_range(err, "ref_point.elevation", m.ref_point.elevation, kElevMin, kElevMax);
  check_range(err, "lane_width", m.lane_width_cm, 0, kLaneWidthMax);
  if (err.tellp() == 0 && (m.lanes.size() < kLanesMin || m.lanes.size() > kLanesMax)) {
    err << "lanes count " << m.lanes.size() << " outside [" << kLanesMin << ", "
        << kLanesMax << "]";
  }
  std::set<std::uint8_t> ids;
  for (const Lane& lane : m.lanes) {
    check_range(err, "lane_id", lane.lane_id, 0, kLaneIdMax);
    check_range(err, "lane_type", static_cast<int>(lane.lane_type), 0, kLaneKindCount - 1);
    if (err.tellp() == 0 && (lane.nodes.size() < kNodesMin || lane.nodes.size() > kNodesMax)) {
      err << "lane " << int(lane.lane_id) << " node count " << lane.nodes.size()
          << " outside [" << kNodesMin << ", " << kNodesMax << "]";
    }
    if (err.tellp() == 0 && !ids.insert(lane.lane_id).second) {
      err << "lane_id " << int(lane.lane_id) << " duplicated";
    }
    for (const NodeXY& n : lane.nodes) {
      check_range(err, "node.x_cm", n.x_cm, kNodeMin, kNodeMax);
      check_range(err, "node.y_cm", n.y_cm, kNodeMin, kNodeMax);
    }
  }
}

void encode(uper::BitWriter& w, const BsmCore& b) {
  w.write_constrained(b.msg_count, 0, kMsgCountMax);
  w.write_octets(b.temporary_id);
  w.write_constrained(b.sec_mark, 0, kSecMarkMax);
  w.write_constrained(b.latitude, kLatMin, kLatMax);
  w.write_constrained(b.longitude, kLonMin, kLonMax);
  w.write_constrained(b.elevation, kElevMin, kElevMax);
  w.write_constrained(b.speed, 0, kSpeedMax);
  w.write_constrained(b.heading, 0, kHeadingMax);
  w.write_enumerated(static_cast<unsigned>(b.role), kRoleCount);
}

void encode(uper::BitWriter& w, const SpatData& s) {
  w.write_constrained(s.intersection_id, 0, kIntersectionIdMax);
  w.write_constrained(s.revision, 0, kRevisionMax);
  w.write_length(s.movements.size(), kMovementsMin, kMovementsMax);
  for (const MovementState& m : s.movements) {
    w.write_constrained(m.signal_group, kSignalGroupMin, kSignalGroupMax);
    w.write_enumerated(static_cast<unsigned>(m.event_state), kEventCount);
    w.write_constrained(m.min_end_time, 0, kMinEndTimeMax);
  }
}

void encode(uper::BitWriter& w, const MapData& m) {
  w.write_constrained(m.intersection_id, 0, kIntersectionIdMax);
  w.write_constrained(m.ref_point.latitude, kLatMin, kLatMax);
  w.write_constrained(m.ref_point.longitude, kLonMin, kLonMax);
  w.write_constrained(m.ref_point.elevation, kElevMin, kElevMax);
  w.write_constrained(m.lane_width_cm, 0, kLaneWidthMax);
  w.write_length(m.lanes.size(), kLanesMin, kLanesMax);
  for (const Lane& lane : m.lanes) {
    w.write_constrained(lane.lane_id, 0, kLaneIdMax);
    w.write_enumerated(static_cast<unsigned>(lane.lane_type), kLaneKindCount);
    w.write_length(lane.nodes.size(), kNodesMin, kNodesMax);
    for (const NodeXY& n : lane.nodes) {
      w.write_constrained(n.x_cm, kNodeMin, kNodeMax);
      w.write_constrained(n.y_cm, kNodeMin, kNodeMax);
    }
  }
}

BsmCore decode_bsm(uper::BitReader& r) {
  BsmCore b;
  b.msg_count = static_cast<std::uint8_t>(r.read_constrained(0, kMsgCountMax));
  r.read_octets(b.temporary_id);
  b.sec_mark = static_cast<std::uint16_t>(r.read_constrained(0, kSecMarkMax));
  b.latitude = static_cast<std::int32_t>(r.read_constrained(kLatMin, kLatMax));
  b.longitude = static_cast<std::int32_t>(r.read_constrained(kLonMin, kLonMax));
  b.elevation = static_cast<std::int32_t>(r.read_constrained(kElevMin, kElevMax));
  b.speed = static_cast<std::uint16_t>(r.read_constrained(0, kSpeedMax));
  b.heading = static_cast<std::uint16_t>(r.read_constrained(0, kHeadingMax));
  b.role = static_cast<RoadUserRole>(r.read_enumerated(kRoleCount));
  return b;
}

SpatData decode_spat(uper::BitReader& r) {
  SpatData s;
  s.intersection_id = static_cast<std::uint16_t>(r.read_constrained(0, kIntersectionIdMax));
  s.revision = static_cast<std::uint8_t>(r.read_constrained(0, kRevisionMax));
  const std::size_t count = r.read_length(kMovementsMin, kMovementsMax);
  s.movements.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    MovementState m;
    m.signal_group = static_cast<std::uint8_t>(r.read_constrained(kSignalGroupMin, kSignalGroupMax));
    m.event_state = static_cast<MovementEvent>(r.read_enumerated(kEventCount));
    m.min_end_time = static_cast<std::uint16_t>(r.read_constrained(0, kMinEndTimeMax));
    s.movements.push_back(m);
  }
  return s;
}

MapData decode_map(uper::BitReader& r) {
  MapData m;
  m.intersection_id = static_cast<std::uint16_t>(r.read_constrained(0, kIntersectionIdMax));
  m.ref_point.latitude = static_cast<std::int32_t>(r.read_constrained(kLatMin, kLatMax));
  m.ref_point.longitude = static_cast<std::int32_t>(r.read_constrained(kLonMin, kLonMax));
  m.ref_point.elevation = static_cast<std::int32_t>(r.read_constrained(kElevMin, kElevMax));
  m.lane_width_cm = static_cast<std::uint16_t>(r.read_constrained(0, kLaneWidthMax));
  const std::size_t lane_count = r.read_length(kLanesMin, kLanesMax);
  m.lanes.reserve(lane_count);
  for (std::size_t i = 0; i < lane_count; ++i) {
    Lane lane;
    lane.lane_id = static_cast<std::uint8_t>(r.read_constrained(0, kLaneIdMax));
    lane.lane_type = static_cast<LaneKind>(r.read_enumerated(kLaneKindCount));
    const std::size_t node_count = r.read_length(kNodesMin, kNodesMax);
    lane.nodes.reserve(node_count);
    for (std::size_t j = 0; j < node_count; ++j) {
      NodeXY n;
      n.x_cm = static_cast<std::int16_t>(r.read_constrained(kNodeMin, kNodeMax));
      n.y_cm = static_cast<std::int16_t>(r.read_constrained(kNodeMin, kNodeMax));
      lane.nodes.push_back(n);
    }
    m.lanes.push_back(std::move(lane));
  }
  return m;
}

}  // namespace

const char* to_string(RoadUserRole role) {
  switch (role) {
    case RoadUserRole::vehicle: return "vehicle";
    case RoadUserRole::pedestrian: return "pedestrian";
    case RoadUserRole::motorcycle: return "motorcycle";
    case RoadUserRole::emergency: return "emergency";
  }
  return "?";
}

const char* to_string(MovementEvent event) {
  switch (event) {
    case MovementEvent::stop_and_remain: return "stop-and-remain";
    case MovementEvent::permissive_movement_allowed: return "permissive-movement-allowed";
    case MovementEvent::protected_movement_allowed: return "protected-movement-allowed";
    case MovementEvent::permissive_clearance: return "permissive-clearance";
    case MovementEvent::protected_clearance: return "protected-clearance";
    case MovementEvent::dark: return "dark";
  }
  return "?";
}

const char* to_string(LaneKind kind) {
  switch (kind) {
    case LaneKind::vehicle: return "vehicle";
    case LaneKind::crosswalk: return "crosswalk";
  }
  return "?";
}

std::string validate_frame(const MessageFrame& frame) {
  std::ostringstream err;
  std::visit([&err](const auto& body) { validate(err, body); }, frame.body);
  return err.str();
}

std::vector<std::uint8_t> encode_frame(const MessageFrame& frame) {
  if (const std::string err = validate_frame(frame); !err.empty()) {
    throw OutOfRange(err);
  }
  uper::BitWriter w;
  // Choice index over {map, spat, bsm}: two bits; index 3 stays unused.
  w.write_bits(frame.body.index(), 2);
  std::visit([&w](const auto& body) { encode(w, body); }, frame.body);
  return w.finish();
}

MessageFrame decode_frame(std::span<const std::uint8_t> bytes) {
  uper::BitReader r(bytes);
  const std::uint64_t alternative = r.read_bits(2);
  MessageFrame frame;
  switch (alternative) {
    case 0: frame.body = decode_map(r); break;
    case 1: frame.body = decode_spat(r); break;
    case 2: frame.body = decode_bsm(r); break;
    default: throw UnknownMessageId("unknown message alternative 3");
  }
  r.expect_final_padding();
  if (const std::string err = validate_frame(frame); !err.empty()) {
    throw uper::ConstraintViolation(err);
  }
  return frame;
}

}  // namespace v2x::j2735
