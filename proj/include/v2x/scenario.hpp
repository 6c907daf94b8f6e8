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
#include <vector>

#include "v2x/geo.hpp"
#include "v2x/j2735.hpp"
#include "v2x/pcap.hpp"

namespace v2x::scenario {

class NotBsm : public Error {
public:
  using Error::Error;
};

class InvalidPressTime : public Error {
public:
  using Error::Error;
};

/// Rigid transform for moving a recorded constellation to a new
/// intersection: rotate by delta_heading about src_ref (compass sense,
/// applied to positions and headings), then translate src_ref onto dst_ref.
/// Elevations shift by the reference elevation difference.
struct RelocationSpec {
  geo::GeoPoint src_ref;
  geo::GeoPoint dst_ref;
  double delta_heading_deg = 0.0;
};

/// Angular sector around an intersection, for keeping only road users
/// arriving from one side.
struct ApproachFilter {
  double center_bearing_deg = 0.0;
  double half_width_deg = 45.0;  // (0, 180]
};

struct IsolateResult {
  pcap::CaptureFile capture;
  std::size_t dropped_undecodable = 0;
};

/// Keep exactly the records whose payload decodes to a road-user message,
/// verbatim and in order. Undecodable records are dropped and counted.
IsolateResult isolate_bsm(const pcap::CaptureFile& capture,
                          const pcap::Encapsulation& encap);

struct RelocateResult {
  pcap::CaptureFile capture;
  std::size_t passed_through_unavailable = 0;  // sentinel-position records
};

/// Apply `spec` to every record of a BSM-only capture and re-encode
/// canonically (raw payload records). Timestamps, IDs, msg_count, sec_mark
/// and speed are preserved. Throws NotBsm on any non-BSM record.
RelocateResult relocate(const pcap::CaptureFile& capture, const RelocationSpec& spec,
                        const pcap::Encapsulation& encap);

/// Keep a BSM record iff the user sits within the bearing sector seen from
/// `intersection_ref` and its heading points toward the intersection
/// (within 90 degrees). Records without position or heading are dropped.
pcap::CaptureFile filter_approaching(const pcap::CaptureFile& capture,
                                     const geo::GeoPoint& intersection_ref,
                                     const ApproachFilter& filter,
                                     const pcap::Encapsulation& encap);

/// Synthetic capture of a pedestrian-actuated signalized crossing:
/// a straight road with two approach lanes and one departure lane per
/// side plus one crosswalk. MAP once per second, SPaT at 10 Hz. While
/// idle the vehicle phase is green and its remaining time counts up one
/// second after reaching zero, repeating; after a button press the
/// vehicle phase turns red for `walk_interval_s` while the crosswalk
/// countdown decreases to zero.
struct SignalSynthConfig {
  double duration_s = 60.0;
  std::vector<double> button_press_times;  // seconds, within [0, duration)
  double walk_interval_s = 10.0;
  geo::GeoPoint ref{40.0, -83.0, 250.0};
  std::uint16_t intersection_id = 1001;
};

pcap::CaptureFile synth_signal_intersection(const SignalSynthConfig& config);

enum class Side : std::size_t { north = 0, east = 1, south = 2, west = 3 };

/// Synthetic capture of a four-way intersection publishing road-user
/// messages at 10 Hz: constant-speed vehicles approach the reference point
/// on straight lines (emission stops when a vehicle reaches it), plus an
/// optional pedestrian crossing at 1.4 m/s. MAP once per second.
struct TrafficSynthConfig {
  double duration_s = 30.0;
  std::array<int, 4> approach_counts{1, 1, 1, 1};  // indexed by Side
  bool include_pedestrian = false;
  geo::GeoPoint ref{40.2365, -83.3672, 290.0};
  std::uint16_t intersection_id = 2002;
  double start_distance_m = 150.0;  // first vehicle of each side
  double vehicle_gap_m = 25.0;      // spacing of later vehicles
  double vehicle_speed_mps = 10.0;
};

pcap::CaptureFile synth_traffic_intersection(const TrafficSynthConfig& config);

/// Capture timestamps of synthetic files start at this epoch second.
inline constexpr std::uint32_t kSynthBaseEpoch = 1600000000;

}  // namespace v2x::scenario
