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

#include "v2x/render.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>

#include "v2x/textfmt.hpp"

namespace v2x::render {

namespace {

using j2735::BsmCore;
using j2735::MapData;
using j2735::MovementEvent;
using j2735::SpatData;
using textfmt::fixed;

// Vehicle-lane palette, indexed by the lane's position in the MAP.
constexpr const char* kLanePalette[] = {"#ffd700", "#ff8c00", "#ff00ff", "#1e90ff",
                                        "#00ced1", "#7fff00", "#da70d6", "#f4a460"};
constexpr const char* kCrosswalkColor = "#8b0000";
constexpr const char* kBackgroundColor = "#1c2023";
constexpr const char* kRefPointColor = "#ff4040";
constexpr const char* kPedestrianColor = "#ff0000";
constexpr const char* kLampOff = "#2e3436";
constexpr const char* kLampRed = "#e01010";
constexpr const char* kLampYellow = "#e6c81e";
constexpr const char* kLampGreen = "#10b818";
constexpr const char* kTextColor = "#ffffff";

constexpr double kVehicleLengthM = 4.8;
constexpr double kVehicleWidthM = 1.9;
constexpr double kPedestrianRadiusM = 0.5;

enum class LampRow { red = 0, yellow = 1, green = 2, off = 3 };

/// Total event-state -> lamp mapping.
LampRow lamp_for(MovementEvent event) {
  switch (event) {
    case MovementEvent::stop_and_remain:
      return LampRow::red;
    case MovementEvent::permissive_movement_allowed:
    case MovementEvent::protected_movement_allowed:
      return LampRow::green;
    case MovementEvent::permissive_clearance:
    case MovementEvent::protected_clearance:
      return LampRow::yellow;
    case MovementEvent::dark:
      return LampRow::off;
  }
  return LampRow::off;
}

struct ScreenPos {
  double x = 0.0, y = 0.0;
};

class SceneWriter {
public:
  explicit SceneWriter(const Viewport& vp) : vp_(vp) {
    svg_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
            std::to_string(vp.width_px) + "\" height=\"" + std::to_string(vp.height_px) +
            "\" viewBox=\"0 0 " + std::to_string(vp.width_px) + " " +
            std::to_string(vp.height_px) + "\">\n";
    svg_ += "<rect class=\"bg\" x=\"0\" y=\"0\" width=\"" + std::to_string(vp.width_px) +
            "\" height=\"" + std::to_string(vp.height_px) + "\" fill=\"" + kBackgroundColor +
            "\"/>\n";
    if (!vp.underlay_href.empty()) {
      svg_ += "<image class=\"underlay\" href=\"" + vp.underlay_href +
              "\" x=\"0\" y=\"0\" width=\"" + std::to_string(vp.width_px) + "\" height=\"" +
              std::to_string(vp.height_px) + "\"/>\n";
    }
  }

  std::optional<ScreenPos> project(const geo::GeoPoint& p) const {
    geo::LocalPoint lp;
    try {
      lp = geo::to_local(vp_.center, p);
    } catch (const geo::OutOfValidity&) {
      return std::nullopt;
    }
    return ScreenPos{vp_.width_px / 2.0 + lp.east_m / vp_.meters_per_pixel,
                     vp_.height_px / 2.0 - lp.north_m / vp_.meters_per_pixel};
  }

  void lanes(const MapData& map) {
    const geo::GeoPoint map_ref{map.ref_point.latitude * j2735::kLatLonDegPerCount,
                                map.ref_point.longitude * j2735::kLatLonDegPerCount, 0.0};
    for (std::size_t i = 0; i < map.lanes.size(); ++i) {
      const j2735::Lane& lane = map.lanes[i];
      const char* color = lane.lane_type == j2735::LaneKind::crosswalk
                              ? kCrosswalkColor
                              : kLanePalette[i % std::size(kLanePalette)];
      std::string points;
      std::vector<ScreenPos> dots;
      for (const j2735::NodeXY& node : lane.nodes) {
        const geo::GeoPoint p = geo::from_local(
            map_ref, geo::LocalPoint{node.x_cm / 100.0, node.y_cm / 100.0, 0.0});
        const auto sp = project(p);
        if (!sp) {
          continue;
        }
        if (!points.empty()) {
          points += ' ';
        }
        points += fixed(sp->x, 2) + "," + fixed(sp->y, 2);
        dots.push_back(*sp);
      }
      svg_ += "<polyline class=\"lane\" points=\"" + points + "\" fill=\"none\" stroke=\"" +
              color + "\" stroke-width=\"2\"/>\n";
      for (const ScreenPos& d : dots) {
        svg_ += "<circle class=\"lane-node\" cx=\"" + fixed(d.x, 2) + "\" cy=\"" +
                fixed(d.y, 2) + "\" r=\"2.50\" fill=\"" + std::string(color) + "\"/>\n";
      }
    }
    // Reference point as a '+'.
    const auto rp = project(map_ref);
    if (rp) {
      svg_ += "<g class=\"ref-point\" stroke=\"" + std::string(kRefPointColor) +
              "\" stroke-width=\"2\">\n";
      svg_ += "<line x1=\"" + fixed(rp->x - 8, 2) + "\" y1=\"" + fixed(rp->y, 2) + "\" x2=\"" +
              fixed(rp->x + 8, 2) + "\" y2=\"" + fixed(rp->y, 2) + "\"/>\n";
      svg_ += "<line x1=\"" + fixed(rp->x, 2) + "\" y1=\"" + fixed(rp->y - 8, 2) + "\" x2=\"" +
              fixed(rp->x, 2) + "\" y2=\"" + fixed(rp->y + 8, 2) + "\"/>\n";
      svg_ += "</g>\n";
    }
  }

  void signals(const SpatData& spat) {
    std::vector<j2735::MovementState> movements(spat.movements.begin(), spat.movements.end());
    std::sort(movements.begin(), movements.end(),
              [](const auto& a, const auto& b) { return a.signal_group < b.signal_group; });
    for (std::size_t i = 0; i < movements.size(); ++i) {
      const double cx = 30.0 + 40.0 * static_cast<double>(i);
      const LampRow active = lamp_for(movements[i].event_state);
      const char* active_color = active == LampRow::red      ? kLampRed
                                 : active == LampRow::yellow ? kLampYellow
                                 : active == LampRow::green  ? kLampGreen
                                                             : kLampOff;
      svg_ += "<g class=\"signal\">\n";
      const double rows[3] = {20.0, 38.0, 56.0};
      for (int row = 0; row < 3; ++row) {
        const char* fill = row == static_cast<int>(active) ? active_color : kLampOff;
        svg_ += "<circle class=\"signal-lamp\" cx=\"" + fixed(cx, 2) + "\" cy=\"" +
                fixed(rows[row], 2) + "\" r=\"7.00\" fill=\"" + fill +
                "\" stroke=\"#707070\" stroke-width=\"1\"/>\n";
      }
      svg_ += "</g>\n";
      countdowns_ += "<text class=\"countdown\" x=\"" + fixed(cx, 2) + "\" y=\"78.00\"" +
                     " font-family=\"monospace\" font-size=\"14\" fill=\"" + kTextColor +
                     "\" text-anchor=\"middle\">" +
                     fixed(movements[i].min_end_time / 10.0, 1) + "</text>\n";
    }
  }

  void users(std::span<const BsmCore> users_in) {
    for (const BsmCore& user : users_in) {
      if (!user.has_position()) {
        ++skipped_;
        continue;
      }
      const auto sp = project(geo::GeoPoint{user.lat_deg(), user.lon_deg(), 0.0});
      if (!sp) {
        ++skipped_;
        continue;
      }
      if (user.role == j2735::RoadUserRole::pedestrian) {
        svg_ += "<circle class=\"user-pedestrian\" cx=\"" + fixed(sp->x, 2) + "\" cy=\"" +
                fixed(sp->y, 2) + "\" r=\"" + fixed(kPedestrianRadiusM / vp_.meters_per_pixel, 2) +
                "\" fill=\"" + kPedestrianColor + "\"/>\n";
        continue;
      }
      const double w = kVehicleWidthM / vp_.meters_per_pixel;
      const double h = kVehicleLengthM / vp_.meters_per_pixel;
      const double heading = user.has_heading() ? user.heading_deg() : 0.0;
      svg_ += "<g class=\"user-vehicle\" fill=\"" + color_from_id(user.temporary_id).css() +
              "\" transform=\"translate(" + fixed(sp->x, 2) + " " + fixed(sp->y, 2) +
              ") rotate(" + fixed(heading, 2) + ")\">\n";
      svg_ += "<rect x=\"" + fixed(-w / 2.0, 2) + "\" y=\"" + fixed(-h / 2.0, 2) +
              "\" width=\"" + fixed(w, 2) + "\" height=\"" + fixed(h, 2) + "\"/>\n";
      svg_ += "</g>\n";
    }
  }

  Frame finish() {
    Frame frame;
    frame.svg = svg_ + countdowns_ + "</svg>\n";
    frame.skipped_users = skipped_;
    return frame;
  }

private:
  const Viewport& vp_;
  std::string svg_;
  std::string countdowns_;  // text layer goes last
  std::size_t skipped_ = 0;
};

}  // namespace

std::string Rgb::css() const {
  std::array<char, 8> buf{};
  std::snprintf(buf.data(), buf.size(), "#%02x%02x%02x", r, g, b);
  return std::string(buf.data(), 7);
}

Rgb color_from_id(const j2735::TemporaryId& id) {
  const std::uint32_t word = static_cast<std::uint32_t>(id[0]) << 24 |
                             static_cast<std::uint32_t>(id[1]) << 16 |
                             static_cast<std::uint32_t>(id[2]) << 8 |
                             static_cast<std::uint32_t>(id[3]);
  const std::uint32_t hashed = word * 2654435761u;  // mod 2^32 by wraparound
  const double hue = static_cast<double>(hashed) / 4294967296.0 * 360.0;
  const double s = 0.8, v = 0.9;

  const double sector = hue / 60.0;
  const int i = static_cast<int>(std::floor(sector)) % 6;
  const double f = sector - std::floor(sector);
  const double p = v * (1.0 - s);
  const double q = v * (1.0 - f * s);
  const double t = v * (1.0 - (1.0 - f) * s);
  double r = 0, g = 0, b = 0;
  switch (i) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    case 5: r = v; g = p; b = q; break;
  }
  return Rgb{static_cast<std::uint8_t>(std::lround(r * 255.0)),
             static_cast<std::uint8_t>(std::lround(g * 255.0)),
             static_cast<std::uint8_t>(std::lround(b * 255.0))};
}

Frame render_intersection_frame(const MapData& map, const SpatData& spat, const Viewport& vp) {
  if (map.intersection_id != spat.intersection_id) {
    throw MismatchedIntersection("signal state for intersection " +
                                 std::to_string(spat.intersection_id) +
                                 " rendered against geometry of " +
                                 std::to_string(map.intersection_id));
  }
  SceneWriter scene(vp);
  scene.lanes(map);
  scene.signals(spat);
  return scene.finish();
}

Frame render_users_frame(std::span<const BsmCore> users, const MapData& map,
                         const Viewport& vp) {
  SceneWriter scene(vp);
  scene.lanes(map);
  scene.users(users);
  return scene.finish();
}

SequenceResult render_sequence(const pcap::CaptureFile& capture, const Viewport& vp,
                               double step_s, const pcap::Encapsulation& encap) {
  if (capture.records.empty()) {
    throw EmptyCapture("cannot render an empty capture");
  }
  if (!(step_s > 0.0)) {
    throw Error("step_s must be > 0");
  }

  struct TimedFrame {
    double t;
    j2735::MessageFrame frame;
  };
  std::vector<TimedFrame> decoded;
  SequenceResult result;
  for (const pcap::CaptureRecord& record : capture.records) {
    try {
      decoded.push_back(TimedFrame{record.time_s(capture.time_resolution),
                                   j2735::decode_frame(pcap::extract_payload(record, encap))});
    } catch (const Error&) {
      ++result.undecodable_records;
    }
  }

  const double t0 = capture.records.front().time_s(capture.time_resolution);
  const double span = capture.span_s();
  const auto frame_count = static_cast<std::size_t>(std::floor(span / step_s + 1e-9)) + 1;

  std::optional<MapData> latest_map;
  std::optional<SpatData> latest_spat;
  std::map<j2735::TemporaryId, std::pair<double, BsmCore>> last_bsm;
  std::size_t next = 0;

  for (std::size_t k = 0; k < frame_count; ++k) {
    const double t = t0 + static_cast<double>(k) * step_s;
    while (next < decoded.size() && decoded[next].t <= t + 1e-9) {
      const j2735::MessageFrame& f = decoded[next].frame;
      if (const auto* m = std::get_if<MapData>(&f.body)) {
        latest_map = *m;
      } else if (const auto* s = std::get_if<SpatData>(&f.body)) {
        latest_spat = *s;
      } else if (const auto* b = std::get_if<BsmCore>(&f.body)) {
        last_bsm[b->temporary_id] = {decoded[next].t, *b};
      }
      ++next;
    }

    SceneWriter scene(vp);
    if (latest_map) {
      scene.lanes(*latest_map);
    }
    if (latest_spat) {
      scene.signals(*latest_spat);
    }
    std::vector<BsmCore> live;
    for (const auto& [id, entry] : last_bsm) {
      if (t - entry.first <= kUserStaleAfterS + 1e-9) {
        live.push_back(entry.second);
      }
    }
    scene.users(live);
    result.frames.push_back(scene.finish());
  }
  return result;
}

void write_frames(const std::string& dir, std::span<const Frame> frames) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    std::array<char, 32> name{};
    std::snprintf(name.data(), name.size(), "frame_%06zu.svg", i + 1);
    std::ofstream out(std::filesystem::path(dir) / name.data(),
                      std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot create frame file in " + dir);
    }
    out << frames[i].svg;
  }
}

}  // namespace v2x::render
