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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "v2x/geo.hpp"
#include "v2x/j2735.hpp"
#include "v2x/pcap.hpp"

namespace v2x::render {

class MismatchedIntersection : public Error {
public:
  using Error::Error;
};

class EmptyCapture : public Error {
public:
  using Error::Error;
};

/// Top-down view: geographic center, scale, and pixel size. North is up.
/// `underlay_href`, when set, references (never embeds) a raster image
/// drawn beneath the vector elements.
struct Viewport {
  geo::GeoPoint center;
  double meters_per_pixel = 0.2;
  int width_px = 1280;
  int height_px = 720;
  std::string underlay_href;
};

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;

  std::string css() const;
  bool operator==(const Rgb&) const = default;
};

/// Stable identity color: hue from a Knuth multiplicative hash of the
/// big-endian id word, saturation 0.8, value 0.9.
Rgb color_from_id(const j2735::TemporaryId& id);

/// One rendered vector-graphics document. Equal scenes produce byte-equal
/// documents.
struct Frame {
  std::string svg;
  std::size_t skipped_users = 0;  // road users without a usable position

  bool operator==(const Frame& other) const { return svg == other.svg; }
};

/// Lane geometry with signal state: per lane a polyline plus node dots in
/// the lane's palette color (crosswalks dark red), a '+' at the reference
/// point, one three-lamp glyph per signal group with the remaining time
/// beneath. Throws MismatchedIntersection when ids disagree.
Frame render_intersection_frame(const j2735::MapData& map, const j2735::SpatData& spat,
                                const Viewport& vp);

/// Road users over the lane geometry: an oriented 4.8 m x 1.9 m rectangle
/// in the identity color per vehicle, a red 0.5 m circle per pedestrian.
/// Users without a usable position are skipped and counted.
Frame render_users_frame(std::span<const j2735::BsmCore> users, const j2735::MapData& map,
                         const Viewport& vp);

struct SequenceResult {
  std::vector<Frame> frames;
  std::size_t undecodable_records = 0;
};

/// One frame per `step_s` across the capture span. Each frame shows the
/// latest geometry and signal state at or before its time plus every road
/// user whose most recent message is at most 1.0 s old.
SequenceResult render_sequence(const pcap::CaptureFile& capture, const Viewport& vp,
                               double step_s, const pcap::Encapsulation& encap);

/// Age beyond which a road user drops out of a frame (seconds).
inline constexpr double kUserStaleAfterS = 1.0;

/// Write frames as dir/frame_000001.svg, frame_000002.svg, ...
void write_frames(const std::string& dir, std::span<const Frame> frames);

}  // namespace v2x::render
