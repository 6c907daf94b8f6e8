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

#include "v2x/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace v2x::scenario {

namespace {

using geo::GeoPoint;
using geo::LocalPoint;
using j2735::BsmCore;
using j2735::MessageFrame;
using pcap::CaptureFile;
using pcap::CaptureRecord;
using pcap::Encapsulation;

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::optional<MessageFrame> try_decode(const CaptureRecord& record,
                                       const Encapsulation& encap) {
  try {
    return j2735::decode_frame(pcap::extract_payload(record, encap));
  } catch (const Error&) {
    return std::nullopt;
  }
}

/// Quantize per the wire scales; ties round half away from zero.
std::int32_t to_lat_count(double deg) { return static_cast<std::int32_t>(std::llround(deg * 1e7)); }

std::int32_t to_lon_count(double deg) {
  if (deg > 180.0) deg -= 360.0;
  if (deg < -180.0) deg += 360.0;
  return static_cast<std::int32_t>(std::llround(deg * 1e7));
}

std::uint16_t to_heading_count(double deg) {
  return static_cast<std::uint16_t>(std::llround(geo::wrap_deg(deg) / j2735::kHeadingDegPerCount) %
                                    28800);
}

CaptureRecord make_record(std::uint32_t ts_sec, std::uint32_t ts_frac,
                          const MessageFrame& frame) {
  CaptureRecord r;
  r.ts_sec = ts_sec;
  r.ts_frac = ts_frac;
  r.payload = j2735::encode_frame(frame);
  r.original_length = static_cast<std::uint32_t>(r.payload.size());
  return r;
}

// Outward unit vector of a compass bearing, in the east/north plane.
LocalPoint unit_toward(double bearing_deg) {
  return LocalPoint{std::sin(bearing_deg * kDegToRad), std::cos(bearing_deg * kDegToRad), 0.0};
}

std::uint16_t sec_mark_at(std::uint32_t ts_sec, std::uint32_t ts_frac_us) {
  return static_cast<std::uint16_t>((ts_sec % 60) * 1000 + ts_frac_us / 1000);
}

j2735::MapData straight_road_map(const SignalSynthConfig& config) {
  j2735::MapData map;
  map.intersection_id = config.intersection_id;
  map.ref_point.latitude = to_lat_count(config.ref.lat_deg);
  map.ref_point.longitude = to_lon_count(config.ref.lon_deg);
  map.ref_point.elevation = static_cast<std::int32_t>(std::llround(config.ref.elev_m * 10.0));
  map.lane_width_cm = 350;

  // Road along the east-west axis; two approach lanes per side, the
  // departure lane left implicit as in typical ingress-only geometry,
  // and one north-south crosswalk. Node lists run toward the stop bar.
  auto vehicle_lane = [](std::uint8_t id, std::int16_t y,
                         std::initializer_list<std::int16_t> xs) {
    j2735::Lane lane;
    lane.lane_id = id;
    lane.lane_type = j2735::LaneKind::vehicle;
    for (std::int16_t x : xs) {
      lane.nodes.push_back({x, y});
    }
    return lane;
  };
  map.lanes.push_back(vehicle_lane(1, -175, {-15000, -7500, -500}));
  map.lanes.push_back(vehicle_lane(2, -525, {-15000, -7500, -500}));
  map.lanes.push_back(vehicle_lane(3, 175, {15000, 7500, 500}));
  map.lanes.push_back(vehicle_lane(4, 525, {15000, 7500, 500}));
  j2735::Lane crosswalk;
  crosswalk.lane_id = 5;
  crosswalk.lane_type = j2735::LaneKind::crosswalk;
  crosswalk.nodes = {{0, -800}, {0, 800}};
  map.lanes.push_back(crosswalk);
  return map;
}

j2735::MapData four_way_map(const TrafficSynthConfig& config) {
  j2735::MapData map;
  map.intersection_id = config.intersection_id;
  map.ref_point.latitude = to_lat_count(config.ref.lat_deg);
  map.ref_point.longitude = to_lon_count(config.ref.lon_deg);
  map.ref_point.elevation = static_cast<std::int32_t>(std::llround(config.ref.elev_m * 10.0));
  map.lane_width_cm = 350;

  std::uint8_t next_id = 1;
  for (int side = 0; side < 4; ++side) {
    const double bearing = side * 90.0;
    const LocalPoint u = unit_toward(bearing);
    const LocalPoint v = unit_toward(bearing + 90.0);  // lateral, to the right
    for (int k = 0; k < 2; ++k) {
      const double lateral_cm = 175.0 + 350.0 * k;
      j2735::Lane lane;
      lane.lane_id = next_id++;
      lane.lane_type = j2735::LaneKind::vehicle;
      for (double d_cm : {15000.0, 7500.0, 1000.0}) {
        lane.nodes.push_back(
            {static_cast<std::int16_t>(std::llround(u.east_m * d_cm + v.east_m * lateral_cm)),
             static_cast<std::int16_t>(std::llround(u.north_m * d_cm + v.north_m * lateral_cm))});
      }
      map.lanes.push_back(std::move(lane));
    }
    j2735::Lane crosswalk;
    crosswalk.lane_id = next_id++;
    crosswalk.lane_type = j2735::LaneKind::crosswalk;
    const double d_cm = 800.0;
    for (double lateral_cm : {-900.0, 900.0}) {
      crosswalk.nodes.push_back(
          {static_cast<std::int16_t>(std::llround(u.east_m * d_cm + v.east_m * lateral_cm)),
           static_cast<std::int16_t>(std::llround(u.north_m * d_cm + v.north_m * lateral_cm))});
    }
    map.lanes.push_back(std::move(crosswalk));
  }
  return map;
}

}  // namespace

IsolateResult isolate_bsm(const CaptureFile& capture, const Encapsulation& encap) {
  IsolateResult result;
  result.capture.byte_order = capture.byte_order;
  result.capture.time_resolution = capture.time_resolution;
  result.capture.link_type = capture.link_type;
  for (const CaptureRecord& record : capture.records) {
    const auto frame = try_decode(record, encap);
    if (!frame) {
      ++result.dropped_undecodable;
      continue;
    }
    if (frame->message_id() == j2735::kMessageIdBsm) {
      result.capture.records.push_back(record);
    }
  }
  return result;
}

RelocateResult relocate(const CaptureFile& capture, const RelocationSpec& spec,
                        const Encapsulation& encap) {
  const double delta = geo::wrap_deg(spec.delta_heading_deg);
  const double cos_d = std::cos(delta * kDegToRad);
  const double sin_d = std::sin(delta * kDegToRad);
  const std::int32_t elev_delta_counts = static_cast<std::int32_t>(
      std::llround((spec.dst_ref.elev_m - spec.src_ref.elev_m) * 10.0));

  RelocateResult result;
  result.capture.byte_order = capture.byte_order;
  result.capture.time_resolution = capture.time_resolution;
  result.capture.link_type = (encap.kind == Encapsulation::Kind::raw_payload &&
                              encap.fixed_skip == 0)
                                 ? capture.link_type
                                 : pcap::kLinkTypeUser0;

  for (std::size_t i = 0; i < capture.records.size(); ++i) {
    const CaptureRecord& record = capture.records[i];
    const auto frame = try_decode(record, encap);
    if (!frame || frame->message_id() != j2735::kMessageIdBsm) {
      throw NotBsm("record " + std::to_string(i) + " is not a decodable BSM");
    }
    BsmCore bsm = std::get<BsmCore>(frame->body);

    if (!bsm.has_position()) {
      ++result.passed_through_unavailable;
      result.capture.records.push_back(record);
      continue;
    }

    const GeoPoint pos{bsm.lat_deg(), bsm.lon_deg(), bsm.elev_m()};
    const LocalPoint lp = geo::to_local(spec.src_ref, pos);
    // Compass-sense (clockwise) rotation in the east/north plane.
    const LocalPoint rotated{lp.east_m * cos_d + lp.north_m * sin_d,
                             -lp.east_m * sin_d + lp.north_m * cos_d, lp.up_m};
    const GeoPoint moved = geo::from_local(spec.dst_ref, rotated);

    bsm.latitude = to_lat_count(moved.lat_deg);
    bsm.longitude = to_lon_count(moved.lon_deg);
    if (bsm.elevation != j2735::kElevUnavailable) {
      bsm.elevation += elev_delta_counts;
    }
    if (bsm.has_heading()) {
      bsm.heading = to_heading_count(bsm.heading_deg() + delta);
    }

    result.capture.records.push_back(
        make_record(record.ts_sec, record.ts_frac, MessageFrame::from(std::move(bsm))));
  }
  return result;
}

CaptureFile filter_approaching(const CaptureFile& capture, const GeoPoint& intersection_ref,
                               const ApproachFilter& filter, const Encapsulation& encap) {
  if (!(filter.half_width_deg > 0.0) || filter.half_width_deg > 180.0) {
    throw Error("approach filter half-width must be in (0, 180]");
  }
  CaptureFile out;
  out.byte_order = capture.byte_order;
  out.time_resolution = capture.time_resolution;
  out.link_type = capture.link_type;

  for (const CaptureRecord& record : capture.records) {
    const auto frame = try_decode(record, encap);
    if (!frame || frame->message_id() != j2735::kMessageIdBsm) {
      continue;
    }
    const BsmCore& bsm = std::get<BsmCore>(frame->body);
    if (!bsm.has_position() || !bsm.has_heading()) {
      continue;
    }
    LocalPoint lp;
    try {
      lp = geo::to_local(intersection_ref, GeoPoint{bsm.lat_deg(), bsm.lon_deg(), 0.0});
    } catch (const geo::OutOfValidity&) {
      continue;
    }
    if (lp.east_m == 0.0 && lp.north_m == 0.0) {
      continue;  // at the reference point, approach direction undefined
    }
    const double bearing_to_user = geo::bearing_deg(LocalPoint{}, lp);
    if (geo::angular_separation_deg(bearing_to_user, filter.center_bearing_deg) >
        filter.half_width_deg) {
      continue;
    }
    const double bearing_to_ref = geo::wrap_deg(bearing_to_user + 180.0);
    if (geo::angular_separation_deg(bsm.heading_deg(), bearing_to_ref) >= 90.0) {
      continue;
    }
    out.records.push_back(record);
  }
  return out;
}

CaptureFile synth_signal_intersection(const SignalSynthConfig& config) {
  if (!(config.duration_s > 0.0)) {
    throw Error("duration_s must be > 0");
  }
  if (!(config.walk_interval_s > 0.0)) {
    throw Error("walk_interval_s must be > 0");
  }
  std::vector<double> presses = config.button_press_times;
  std::sort(presses.begin(), presses.end());
  for (double p : presses) {
    if (p < 0.0 || p >= config.duration_s) {
      throw InvalidPressTime("button press outside the capture duration");
    }
  }
  // A press during an active walk interval has no effect.
  std::vector<double> walks;  // start times
  for (double p : presses) {
    if (walks.empty() || p > walks.back() + config.walk_interval_s) {
      walks.push_back(p);
    }
  }

  const j2735::MapData map = straight_road_map(config);

  CaptureFile out;
  const auto ticks = static_cast<std::int64_t>(std::ceil(config.duration_s * 10.0 - 1e-9));
  for (std::int64_t k = 0; k < ticks; ++k) {
    const double t = k / 10.0;
    const std::uint32_t ts_sec = kSynthBaseEpoch + static_cast<std::uint32_t>(k / 10);
    const std::uint32_t ts_frac = static_cast<std::uint32_t>(k % 10) * 100000u;

    if (k % 10 == 0) {
      out.records.push_back(make_record(ts_sec, ts_frac, MessageFrame::from(map)));
    }

    // Walk interval (p, p+W]; outside any walk the pedestal counts up from
    // the end of the previous walk.
    double idle_start = 0.0;
    std::optional<double> active_walk_start;
    for (double w : walks) {
      if (t > w && t <= w + config.walk_interval_s) {
        active_walk_start = w;
        break;
      }
      if (t > w + config.walk_interval_s) {
        idle_start = w + config.walk_interval_s;
      }
    }

    j2735::SpatData spat;
    spat.intersection_id = config.intersection_id;
    spat.revision = 1;
    j2735::MovementState vehicle_phase{1, j2735::MovementEvent::protected_movement_allowed, 0};
    j2735::MovementState crosswalk_phase{2, j2735::MovementEvent::stop_and_remain, 0};
    if (active_walk_start) {
      const double remaining = *active_walk_start + config.walk_interval_s - t;
      const auto tenths = static_cast<std::uint16_t>(std::llround(remaining * 10.0));
      vehicle_phase.event_state = j2735::MovementEvent::stop_and_remain;
      vehicle_phase.min_end_time = tenths;
      crosswalk_phase.event_state = j2735::MovementEvent::protected_movement_allowed;
      crosswalk_phase.min_end_time = tenths;
    } else {
      const auto pedestal = static_cast<std::uint16_t>(
          (static_cast<std::int64_t>(std::floor(t - idle_start + 1e-9)) % 3600) * 10);
      vehicle_phase.min_end_time = pedestal;
      crosswalk_phase.min_end_time = pedestal;
    }
    spat.movements = {vehicle_phase, crosswalk_phase};
    out.records.push_back(make_record(ts_sec, ts_frac, MessageFrame::from(std::move(spat))));
  }
  return out;
}

CaptureFile synth_traffic_intersection(const TrafficSynthConfig& config) {
  if (!(config.duration_s > 0.0)) {
    throw Error("duration_s must be > 0");
  }
  if (!(config.vehicle_speed_mps > 0.0)) {
    throw Error("vehicle_speed_mps must be > 0");
  }

  const j2735::MapData map = four_way_map(config);

  struct Vehicle {
    j2735::TemporaryId id;
    double bearing_deg;   // side the vehicle comes from
    double start_m;
    std::uint8_t msg_count = 0;
  };
  std::vector<Vehicle> vehicles;
  for (int side = 0; side < 4; ++side) {
    for (int k = 0; k < config.approach_counts[static_cast<std::size_t>(side)]; ++k) {
      Vehicle v;
      v.id = {static_cast<std::uint8_t>(0xC0 + side), static_cast<std::uint8_t>(k + 1), 0x00,
              0x01};
      v.bearing_deg = side * 90.0;
      v.start_m = config.start_distance_m + k * config.vehicle_gap_m;
      vehicles.push_back(v);
    }
  }

  const auto speed_counts =
      static_cast<std::uint16_t>(std::llround(config.vehicle_speed_mps / j2735::kSpeedMpsPerCount));
  const auto elev_counts = static_cast<std::int32_t>(std::llround(config.ref.elev_m * 10.0));

  std::uint8_t ped_msg_count = 0;
  constexpr double kPedSpeedMps = 1.4;
  constexpr double kPedStartEast = -10.0, kPedEndEast = 10.0, kPedNorth = 8.0;

  CaptureFile out;
  const auto ticks = static_cast<std::int64_t>(std::ceil(config.duration_s * 10.0 - 1e-9));
  for (std::int64_t k = 0; k < ticks; ++k) {
    const double t = k / 10.0;
    const std::uint32_t ts_sec = kSynthBaseEpoch + static_cast<std::uint32_t>(k / 10);
    const std::uint32_t ts_frac = static_cast<std::uint32_t>(k % 10) * 100000u;
    const std::uint16_t sec_mark = sec_mark_at(ts_sec, ts_frac);

    if (k % 10 == 0) {
      out.records.push_back(make_record(ts_sec, ts_frac, MessageFrame::from(map)));
    }

    for (Vehicle& v : vehicles) {
      const double distance = v.start_m - config.vehicle_speed_mps * t;
      if (distance <= 0.0) {
        continue;  // reached the intersection; approaching users only
      }
      const LocalPoint u = unit_toward(v.bearing_deg);
      const GeoPoint pos = geo::from_local(
          config.ref, LocalPoint{u.east_m * distance, u.north_m * distance, 0.0});
      BsmCore bsm;
      bsm.msg_count = v.msg_count;
      v.msg_count = static_cast<std::uint8_t>((v.msg_count + 1) % 128);
      bsm.temporary_id = v.id;
      bsm.sec_mark = sec_mark;
      bsm.latitude = to_lat_count(pos.lat_deg);
      bsm.longitude = to_lon_count(pos.lon_deg);
      bsm.elevation = elev_counts;
      bsm.speed = speed_counts;
      bsm.heading = to_heading_count(v.bearing_deg + 180.0);
      bsm.role = j2735::RoadUserRole::vehicle;
      out.records.push_back(make_record(ts_sec, ts_frac, MessageFrame::from(std::move(bsm))));
    }

    if (config.include_pedestrian) {
      const double east = kPedStartEast + kPedSpeedMps * t;
      if (east <= kPedEndEast) {
        const GeoPoint pos =
            geo::from_local(config.ref, LocalPoint{east, kPedNorth, 0.0});
        BsmCore bsm;
        bsm.msg_count = ped_msg_count;
        ped_msg_count = static_cast<std::uint8_t>((ped_msg_count + 1) % 128);
        bsm.temporary_id = {0x9D, 0x00, 0x00, 0x01};
        bsm.sec_mark = sec_mark;
        bsm.latitude = to_lat_count(pos.lat_deg);
        bsm.longitude = to_lon_count(pos.lon_deg);
        bsm.elevation = elev_counts;
        bsm.speed = static_cast<std::uint16_t>(std::llround(kPedSpeedMps / j2735::kSpeedMpsPerCount));
        bsm.heading = to_heading_count(90.0);
        bsm.role = j2735::RoadUserRole::pedestrian;
        out.records.push_back(make_record(ts_sec, ts_frac, MessageFrame::from(std::move(bsm))));
      }
    }
  }
  return out;
}

}  // namespace v2x::scenario
