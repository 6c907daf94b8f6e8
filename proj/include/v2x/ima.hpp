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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "v2x/geo.hpp"
#include "v2x/j2735.hpp"
#include "v2x/replay.hpp"

namespace v2x::ima {

class NegativeInput : public Error {
public:
  using Error::Error;
};

struct HostState {
  geo::GeoPoint position;
  double speed_mps = 0.0;
  double heading_deg = 0.0;
};

struct RemoteTrack {
  j2735::TemporaryId id{};
  geo::GeoPoint position;
  double distance_m = 0.0;  // straight-line horizontal distance to the reference
  double speed_mps = 0.0;
  double heading_deg = 0.0;
  double last_seen_s = 0.0;
};

struct ImaConfig {
  double t_safety_s = 3.0;
  geo::GeoPoint intersection_ref;
  double track_timeout_s = 2.0;
};

/// Time to reach the intersection at constant speed; empty when the vehicle
/// is stationary (it can never trigger a warning). Throws NegativeInput.
std::optional<double> time_to_intersection(double distance_m, double speed_mps);

/// Conflict test on times-to-intersection:
///   t_remote - t_safety/2 < t_host < t_remote + t_safety/2   (strict).
bool check_warning(double t_host_s, double t_remote_s, double t_safety_s);

/// One advisory snapshot: every live track, plus the warning verdict and
/// the track that produced it.
struct Advisory {
  std::vector<RemoteTrack> tracks;  // ordered by id
  bool warning = false;
  std::optional<RemoteTrack> offending;
  std::optional<double> t_host_s;
};

/// Intersection Movement Assist: tracks remote vehicles from received
/// messages, compares times-to-intersection against the host, and raises a
/// warning on predicted conflicts. Single-owner state machine.
class ImaApp {
public:
  explicit ImaApp(ImaConfig config);

  /// Ingest one received message at monotonic time `now_s` and produce the
  /// current advisory. Non-BSM messages leave the track table untouched.
  Advisory step(const HostState& host, const replay::ReceivedMessage& msg, double now_s);

  std::size_t skipped_unusable() const { return skipped_unusable_; }

private:
  ImaConfig config_;
  std::map<j2735::TemporaryId, RemoteTrack> tracks_;
  std::size_t skipped_unusable_ = 0;
};

/// Driver-facing text: one line per track
///   `id=<hex> dist=<m> speed=<m/s> hdg=<deg>`
/// plus a final capitalized `IMA WARNING: ...` line when a conflict is
/// predicted. Empty advisory renders as empty text.
std::string format_advisory(const Advisory& advisory);

}  // namespace v2x::ima
