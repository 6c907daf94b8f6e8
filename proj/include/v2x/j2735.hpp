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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "v2x/errors.hpp"

namespace v2x::j2735 {

// Wire scale factors and unavailable codes for BSM / MAP position fields.
inline constexpr double kLatLonDegPerCount = 1e-7;
inline constexpr double kElevMetersPerCount = 0.1;
inline constexpr double kSpeedMpsPerCount = 0.02;
inline constexpr double kHeadingDegPerCount = 0.0125;

inline constexpr std::int32_t kLatUnavailable = 900000001;
inline constexpr std::int32_t kLonUnavailable = 1800000001;
inline constexpr std::int32_t kElevUnavailable = -4096;
inline constexpr std::uint16_t kSpeedUnavailable = 8191;
inline constexpr std::uint16_t kHeadingUnavailable = 28800;

inline constexpr int kMessageIdMap = 18;
inline constexpr int kMessageIdSpat = 19;
inline constexpr int kMessageIdBsm = 20;

enum class RoadUserRole : std::uint8_t { vehicle = 0, pedestrian, motorcycle, emergency };

enum class MovementEvent : std::uint8_t {
  stop_and_remain = 0,            // red
  permissive_movement_allowed,    // green
  protected_movement_allowed,     // green
  permissive_clearance,           // yellow
  protected_clearance,            // yellow
  dark
};

enum class LaneKind : std::uint8_t { vehicle = 0, crosswalk };

const char* to_string(RoadUserRole role);
const char* to_string(MovementEvent event);
const char* to_string(LaneKind kind);

using TemporaryId = std::array<std::uint8_t, 4>;

/// One road user's broadcast state.
struct BsmCore {
  std::uint8_t msg_count = 0;          // 0..127
  TemporaryId temporary_id{};          // 4 octets
  std::uint16_t sec_mark = 0;          // ms within the minute, 0..65535
  std::int32_t latitude = kLatUnavailable;    // 1e-7 deg
  std::int32_t longitude = kLonUnavailable;   // 1e-7 deg
  std::int32_t elevation = kElevUnavailable;  // 0.1 m, -4096..61439
  std::uint16_t speed = kSpeedUnavailable;    // 0.02 m/s, 0..8191
  std::uint16_t heading = kHeadingUnavailable;  // 0.0125 deg, 0..28800
  RoadUserRole role = RoadUserRole::vehicle;

  bool has_position() const {
    return latitude != kLatUnavailable && longitude != kLonUnavailable;
  }
  bool has_speed() const { return speed != kSpeedUnavailable; }
  bool has_heading() const { return heading != kHeadingUnavailable; }
  double lat_deg() const { return latitude * kLatLonDegPerCount; }
  double lon_deg() const { return longitude * kLatLonDegPerCount; }
  double elev_m() const { return elevation * kElevMetersPerCount; }
  double speed_mps() const { return speed * kSpeedMpsPerCount; }
  double heading_deg() const { return heading * kHeadingDegPerCount; }

  bool operator==(const BsmCore&) const = default;
};

struct MovementState {
  std::uint8_t signal_group = 1;  // 1..255
  MovementEvent event_state = MovementEvent::dark;
  std::uint16_t min_end_time = 0;  // tenths of seconds, 0..36001

  bool operator==(const MovementState&) const = default;
};

struct SpatData {
  std::uint16_t intersection_id = 0;
  std::uint8_t revision = 0;  // 0..127
  std::vector<MovementState> movements;  // non-empty, unique signal groups

  bool operator==(const SpatData&) const = default;
};

struct RefPoint {
  std::int32_t latitude = 0;   // 1e-7 deg
  std::int32_t longitude = 0;  // 1e-7 deg
  std::int32_t elevation = 0;  // 0.1 m

  bool operator==(const RefPoint&) const = default;
};

struct NodeXY {
  std::int16_t x_cm = 0;  // east offset from ref point
  std::int16_t y_cm = 0;  // north offset from ref point

  bool operator==(const NodeXY&) const = default;
};

struct Lane {
  std::uint8_t lane_id = 0;
  LaneKind lane_type = LaneKind::vehicle;
  std::vector<NodeXY> nodes;  // >= 2 entries

  bool operator==(const Lane&) const = default;
};

struct MapData {
  std::uint16_t intersection_id = 0;
  RefPoint ref_point;
  std::uint16_t lane_width_cm = 0;  // 0..32767
  std::vector<Lane> lanes;          // non-empty, unique lane ids

  bool operator==(const MapData&) const = default;
};

/// Decoded message. The variant order fixes the wire alternative index,
/// so message_id() is derived rather than stored.
struct MessageFrame {
  std::variant<MapData, SpatData, BsmCore> body;

  int message_id() const { return kMessageIdMap + static_cast<int>(body.index()); }

  static MessageFrame from(MapData m) { return MessageFrame{std::move(m)}; }
  static MessageFrame from(SpatData s) { return MessageFrame{std::move(s)}; }
  static MessageFrame from(BsmCore b) { return MessageFrame{std::move(b)}; }

  bool operator==(const MessageFrame&) const = default;
};

/// A field was outside its constrained range at encode time.
class OutOfRange : public Error {
public:
  using Error::Error;
};

/// The wire alternative index does not name a known message type.
class UnknownMessageId : public Error {
public:
  using Error::Error;
};

/// Canonical unaligned-PER encoding of the frame, zero-padded to bytes.
std::vector<std::uint8_t> encode_frame(const MessageFrame& frame);

/// Inverse of encode_frame. Throws uper::Truncated, uper::ConstraintViolation
/// or UnknownMessageId; never returns a frame violating its invariants.
MessageFrame decode_frame(std::span<const std::uint8_t> bytes);

/// Empty string when every invariant holds, else a description naming the
/// offending field.
std::string validate_frame(const MessageFrame& frame);

}  // namespace v2x::j2735
