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
#include <optional>
#include <string>
#include <utility>

#include "v2x/geo.hpp"

namespace v2x::demo {

/// End-to-end conflict-warning exercise run locally: synthesize four-way
/// traffic, keep the north approach, relocate it to `dst_ref`, replay the
/// result over loopback, and feed the received stream into the warning
/// application against a scripted host driving in from the south. The
/// observed warning interval is compared against the closed-form interval
/// for the two constant-speed trajectories.
struct DemoConfig {
  double host_start_m = 150.0;
  double host_speed_mps = 10.0;
  double remote_start_m = 165.0;
  double remote_speed_mps = 10.0;
  double t_safety_s = 3.0;
  double replay_speed = 4.0;  // wall-clock compression; timings reported in capture time
  geo::GeoPoint src_ref{40.2365, -83.3672, 290.0};
  geo::GeoPoint dst_ref{40.1, -83.1, 270.0};
  double delta_heading_deg = 0.0;
  std::uint16_t port = 0;  // 0 picks an ephemeral loopback port
};

struct DemoReport {
  bool pass = false;
  std::string text;  // stage-by-stage report, one line per stage
  std::optional<std::pair<double, double>> analytic_window_s;
  std::optional<std::pair<double, double>> observed_window_s;
  std::string last_warning_advisory;
  std::size_t datagrams_sent = 0;
  std::size_t frames_received = 0;
};

DemoReport run_pipeline_demo(const DemoConfig& config);

}  // namespace v2x::demo
