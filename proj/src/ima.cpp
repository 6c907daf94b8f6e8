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

#include "v2x/ima.hpp"

#include <cmath>

#include "v2x/textfmt.hpp"

namespace v2x::ima {

using textfmt::fixed;
using textfmt::hex_id;

std::optional<double> time_to_intersection(double distance_m, double speed_mps) {
  if (distance_m < 0.0 || speed_mps < 0.0) {
    throw NegativeInput("distance and speed must be non-negative");
  }
  if (speed_mps == 0.0) {
    return std::nullopt;  // stationary: never reaches the conflict point
  }
  return distance_m / speed_mps;
}

bool check_warning(double t_host_s, double t_remote_s, double t_safety_s) {
  return t_remote_s - t_safety_s / 2.0 < t_host_s &&
         t_host_s < t_remote_s + t_safety_s / 2.0;
}

ImaApp::ImaApp(ImaConfig config) : config_(config) {
  if (!(config_.t_safety_s > 0.0) || !(config_.track_timeout_s > 0.0)) {
    throw Error("t_safety and track_timeout must be > 0");
  }
}

Advisory ImaApp::step(const HostState& host, const replay::ReceivedMessage& msg,
                      double now_s) {
  if (const auto* bsm = std::get_if<j2735::BsmCore>(&msg.frame.body)) {
    // A track needs position, speed and heading; messages with unavailable
    // codes (or positions outside the projection window) are skipped.
    if (bsm->has_position() && bsm->has_speed() && bsm->has_heading()) {
      try {
        const geo::GeoPoint pos{bsm->lat_deg(), bsm->lon_deg(), bsm->elev_m()};
        const geo::LocalPoint lp = geo::to_local(config_.intersection_ref, pos);
        RemoteTrack& track = tracks_[bsm->temporary_id];
        track.id = bsm->temporary_id;
        track.position = pos;
        track.distance_m = std::hypot(lp.east_m, lp.north_m);
        track.speed_mps = bsm->speed_mps();
        track.heading_deg = bsm->heading_deg();
        track.last_seen_s = now_s;
      } catch (const geo::OutOfValidity&) {
        ++skipped_unusable_;
      }
    } else {
      ++skipped_unusable_;
    }
  }

  for (auto it = tracks_.begin(); it != tracks_.end();) {
    if (now_s - it->second.last_seen_s > config_.track_timeout_s) {
      it = tracks_.erase(it);
    } else {
      ++it;
    }
  }

  Advisory advisory;
  advisory.tracks.reserve(tracks_.size());
  for (const auto& [id, track] : tracks_) {
    advisory.tracks.push_back(track);
  }

  std::optional<double> t_host;
  try {
    const geo::LocalPoint host_lp = geo::to_local(config_.intersection_ref, host.position);
    t_host = time_to_intersection(std::hypot(host_lp.east_m, host_lp.north_m),
                                  host.speed_mps);
  } catch (const geo::OutOfValidity&) {
    t_host = std::nullopt;
  }
  advisory.t_host_s = t_host;

  if (t_host) {
    for (const RemoteTrack& track : advisory.tracks) {
      const auto t_remote = time_to_intersection(track.distance_m, track.speed_mps);
      if (t_remote && check_warning(*t_host, *t_remote, config_.t_safety_s)) {
        advisory.warning = true;
        advisory.offending = track;
        break;
      }
    }
  }
  return advisory;
}

std::string format_advisory(const Advisory& advisory) {
  std::string out;
  for (const RemoteTrack& track : advisory.tracks) {
    out += "id=" + hex_id(track.id) + " dist=" + fixed(track.distance_m, 1) +
           " speed=" + fixed(track.speed_mps, 1) + " hdg=" + fixed(track.heading_deg, 1) +
           "\n";
  }
  if (advisory.warning && advisory.offending) {
    out += "IMA WARNING: VEHICLE " + hex_id(advisory.offending->id) +
           " dist=" + fixed(advisory.offending->distance_m, 1) +
           " speed=" + fixed(advisory.offending->speed_mps, 1) + "\n";
  }
  return out;
}

}  // namespace v2x::ima
