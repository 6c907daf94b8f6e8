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

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "v2x/j2735.hpp"

namespace testutil {

inline std::string hex(std::span<const std::uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xF]);
  }
  return out;
}

inline std::vector<std::uint8_t> unhex(const std::string& text) {
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 2);
  for (std::size_t i = 0; i + 1 < text.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>(std::stoi(text.substr(i, 2), nullptr, 16)));
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  const std::string s = read_file(path);
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

inline std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

/// Uniform random in-schema message frames for round-trip properties.
class FrameGen {
public:
  explicit FrameGen(std::uint64_t seed) : rng_(seed) {}

  v2x::j2735::BsmCore bsm() {
    v2x::j2735::BsmCore b;
    b.msg_count = static_cast<std::uint8_t>(pick(0, 127));
    for (auto& octet : b.temporary_id) {
      octet = static_cast<std::uint8_t>(pick(0, 255));
    }
    b.sec_mark = static_cast<std::uint16_t>(pick(0, 65535));
    b.latitude = static_cast<std::int32_t>(pick(-900000000, 900000001));
    b.longitude = static_cast<std::int32_t>(pick(-1799999999, 1800000001));
    b.elevation = static_cast<std::int32_t>(pick(-4096, 61439));
    b.speed = static_cast<std::uint16_t>(pick(0, 8191));
    b.heading = static_cast<std::uint16_t>(pick(0, 28800));
    b.role = static_cast<v2x::j2735::RoadUserRole>(pick(0, 3));
    return b;
  }

  v2x::j2735::SpatData spat(std::size_t max_movements = 8) {
    v2x::j2735::SpatData s;
    s.intersection_id = static_cast<std::uint16_t>(pick(0, 65535));
    s.revision = static_cast<std::uint8_t>(pick(0, 127));
    std::vector<std::uint8_t> groups(255);
    std::iota(groups.begin(), groups.end(), 1);
    std::shuffle(groups.begin(), groups.end(), rng_);
    const std::size_t n = static_cast<std::size_t>(
        pick(1, static_cast<std::int64_t>(std::min<std::size_t>(max_movements, 255))));
    for (std::size_t i = 0; i < n; ++i) {
      v2x::j2735::MovementState m;
      m.signal_group = groups[i];
      m.event_state = static_cast<v2x::j2735::MovementEvent>(pick(0, 5));
      m.min_end_time = static_cast<std::uint16_t>(pick(0, 36001));
      s.movements.push_back(m);
    }
    return s;
  }

  v2x::j2735::MapData map(std::size_t max_lanes = 6, std::size_t max_nodes = 8) {
    v2x::j2735::MapData m;
    m.intersection_id = static_cast<std::uint16_t>(pick(0, 65535));
    m.ref_point.latitude = static_cast<std::int32_t>(pick(-900000000, 900000001));
    m.ref_point.longitude = static_cast<std::int32_t>(pick(-1799999999, 1800000001));
    m.ref_point.elevation = static_cast<std::int32_t>(pick(-4096, 61439));
    m.lane_width_cm = static_cast<std::uint16_t>(pick(0, 32767));
    std::vector<std::uint8_t> ids(256);
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng_);
    const std::size_t n = static_cast<std::size_t>(
        pick(1, static_cast<std::int64_t>(std::min<std::size_t>(max_lanes, 255))));
    for (std::size_t i = 0; i < n; ++i) {
      v2x::j2735::Lane lane;
      lane.lane_id = ids[i];
      lane.lane_type = static_cast<v2x::j2735::LaneKind>(pick(0, 1));
      const std::size_t nodes = static_cast<std::size_t>(
          pick(2, static_cast<std::int64_t>(std::clamp<std::size_t>(max_nodes, 2, 63))));
      for (std::size_t j = 0; j < nodes; ++j) {
        lane.nodes.push_back({static_cast<std::int16_t>(pick(-32768, 32767)),
                              static_cast<std::int16_t>(pick(-32768, 32767))});
      }
      m.lanes.push_back(std::move(lane));
    }
    return m;
  }

  v2x::j2735::MessageFrame frame() {
    switch (pick(0, 2)) {
      case 0: return v2x::j2735::MessageFrame::from(map());
      case 1: return v2x::j2735::MessageFrame::from(spat());
      default: return v2x::j2735::MessageFrame::from(bsm());
    }
  }

  std::int64_t pick(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  std::mt19937_64& rng() { return rng_; }

private:
  std::mt19937_64 rng_;
};

}  // namespace testutil
