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

#include "v2x/demo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>
#include <vector>

#include "v2x/ima.hpp"
#include "v2x/replay.hpp"
#include "v2x/scenario.hpp"
#include "v2x/textfmt.hpp"

namespace v2x::demo {

namespace {

using textfmt::fixed;

/// Warning interval for two constant-speed straight-line approaches, from
/// the times-to-intersection t_host = |T_h - t| and t_remote = |T_r - t|
/// with T = start distance / speed. The gap |t_host - t_remote| is constant
/// at |T_h - T_r| outside [T_h, T_r] and V-shaped inside, so the strict
/// warning condition gap < t_safety/2 solves in closed form.
std::optional<std::pair<double, double>> analytic_warning_window(const DemoConfig& c,
                                                                 double last_remote_t) {
  if (!(c.host_speed_mps > 0.0) || !(c.remote_speed_mps > 0.0)) {
    return std::nullopt;
  }
  const double t_h = c.host_start_m / c.host_speed_mps;
  const double t_r = c.remote_start_m / c.remote_speed_mps;
  const double half = c.t_safety_s / 2.0;
  const double constant_gap = std::abs(t_h - t_r);

  double begin = 0.0;
  double end = last_remote_t;
  if (constant_gap >= half) {
    const double mid = (t_h + t_r) / 2.0;
    begin = mid - c.t_safety_s / 4.0;
    end = std::min(end, mid + c.t_safety_s / 4.0);
  }
  if (begin >= end) {
    return std::nullopt;
  }
  return std::make_pair(begin, end);
}

bool last_line_is_warning(const std::string& advisory_text) {
  if (advisory_text.empty()) {
    return false;
  }
  std::size_t end = advisory_text.size();
  if (advisory_text[end - 1] == '\n') {
    --end;
  }
  const std::size_t nl = advisory_text.rfind('\n', end == 0 ? 0 : end - 1);
  const std::size_t start = nl == std::string::npos ? 0 : nl + 1;
  return advisory_text.compare(start, 13, "IMA WARNING: ") == 0;
}

}  // namespace

DemoReport run_pipeline_demo(const DemoConfig& config) {
  DemoReport report;
  std::ostringstream text;
  const pcap::Encapsulation raw{};

  // Capture long enough for the remote to reach the reference point.
  const double remote_arrival_s = config.remote_start_m / config.remote_speed_mps;
  scenario::TrafficSynthConfig synth;
  synth.duration_s = remote_arrival_s + 2.0;
  synth.approach_counts = {1, 1, 0, 1};  // north remote plus cross traffic
  synth.ref = config.src_ref;
  synth.start_distance_m = config.remote_start_m;
  synth.vehicle_speed_mps = config.remote_speed_mps;
  const pcap::CaptureFile traffic = scenario::synth_traffic_intersection(synth);
  text << "synth: " << traffic.records.size() << " records, 3 approaching vehicles\n";

  const scenario::IsolateResult isolated = scenario::isolate_bsm(traffic, raw);
  text << "isolate: " << isolated.capture.records.size() << " road-user records\n";

  const pcap::CaptureFile north = scenario::filter_approaching(
      isolated.capture, config.src_ref, scenario::ApproachFilter{0.0, 45.0}, raw);
  text << "filter north: " << north.records.size() << " records kept\n";

  scenario::RelocationSpec spec;
  spec.src_ref = config.src_ref;
  spec.dst_ref = config.dst_ref;
  spec.delta_heading_deg = config.delta_heading_deg;
  const scenario::RelocateResult moved = scenario::relocate(north, spec, raw);
  text << "relocate: " << moved.capture.records.size() << " records moved to "
       << fixed(config.dst_ref.lat_deg, 4) << "," << fixed(config.dst_ref.lon_deg, 4) << "\n";
  if (moved.capture.records.empty()) {
    report.text = text.str() + "FAIL: nothing to replay\n";
    return report;
  }

  const double t_first_record = moved.capture.record_time_s(0);
  const double t_last_record =
      moved.capture.record_time_s(moved.capture.records.size() - 1);

  // Replay over loopback into the listener; the sink thread reconstructs
  // capture time from arrival time and drives the warning application.
  replay::Listener listener(config.port);
  std::atomic<bool> stop{false};
  replay::BoundedQueue<replay::ReceivedMessage> queue(4096);
  std::thread listen_thread([&] {
    listener.run([&](const replay::ReceivedMessage& m) { queue.push(m); }, stop);
  });

  replay::ReplayConfig rc;
  rc.host = "127.0.0.1";
  rc.port = listener.port();
  rc.speed_factor = config.replay_speed;
  replay::ReplayReport sent;
  std::thread send_thread(
      [&] { sent = replay::replay(moved.capture, rc, raw); });

  ima::ImaApp app(ima::ImaConfig{config.t_safety_s, config.dst_ref, 2.0});
  std::size_t received = 0;

  // Capture time is reconstructed from the message's own millisecond
  // mark (unwrapped at minute boundaries), so the measured warning
  // interval is independent of socket jitter and replay speed.
  std::optional<std::uint16_t> first_sec_mark;
  std::uint16_t prev_sec_mark = 0;
  double minute_offset_s = 0.0;

  struct Sample {
    double t;
    bool warning;
  };
  std::vector<Sample> samples;

  send_thread.join();
  // Drain until the stream has been quiet for a moment.
  const double idle_limit_s = 0.5;
  double last_pop = replay::monotonic_now_s();
  replay::ReceivedMessage msg;
  while (replay::monotonic_now_s() - last_pop < idle_limit_s) {
    if (!queue.pop(msg, 0.05)) {
      continue;
    }
    last_pop = replay::monotonic_now_s();
    ++received;
    const auto* bsm = std::get_if<j2735::BsmCore>(&msg.frame.body);
    if (bsm == nullptr) {
      continue;
    }
    if (!first_sec_mark) {
      first_sec_mark = bsm->sec_mark;
      prev_sec_mark = bsm->sec_mark;
    }
    if (bsm->sec_mark + 30000 < prev_sec_mark) {
      minute_offset_s += 60.0;
    }
    prev_sec_mark = bsm->sec_mark;
    const double t_cap =
        (static_cast<double>(bsm->sec_mark) - static_cast<double>(*first_sec_mark)) / 1000.0 +
        minute_offset_s;

    // Scripted host: approaches from the south at constant speed, passing
    // through the reference point.
    const double north_m = -config.host_start_m + config.host_speed_mps * t_cap;
    ima::HostState host;
    host.position = geo::from_local(config.dst_ref, geo::LocalPoint{0.0, north_m, 0.0});
    host.speed_mps = config.host_speed_mps;
    host.heading_deg = 0.0;

    const ima::Advisory advisory = app.step(host, msg, t_cap);
    samples.push_back(Sample{t_cap, advisory.warning});
    if (advisory.warning) {
      report.last_warning_advisory = ima::format_advisory(advisory);
    }
  }
  stop.store(true);
  listen_thread.join();

  // Point-by-point conformance against the exact-arithmetic gap
  // ||T_h - t| - |T_r - t||. The wire format quantizes positions to 1e-7
  // degrees (about a centimeter, so about a millisecond of time error
  // here); samples whose exact gap sits within the noise budget of the
  // strict t_safety/2 boundary can legitimately tip either way and are
  // excluded from the verdict. Every other sample must match the
  // analytic warning decision.
  std::sort(samples.begin(), samples.end(),
            [](const Sample& a, const Sample& b) { return a.t < b.t; });
  const double half_margin = config.t_safety_s / 2.0;
  const double noise_budget_s = 0.01;
  const double t_h_arrival = config.host_speed_mps > 0.0
                                 ? config.host_start_m / config.host_speed_mps
                                 : std::numeric_limits<double>::infinity();
  const double t_r_arrival = config.remote_speed_mps > 0.0
                                 ? config.remote_start_m / config.remote_speed_mps
                                 : std::numeric_limits<double>::infinity();
  std::optional<double> first_warning_t, last_warning_t;
  std::size_t boundary_ties = 0;
  std::size_t decision_mismatches = 0;
  for (const Sample& s : samples) {
    const double exact_gap = std::abs(std::abs(t_h_arrival - s.t) - std::abs(t_r_arrival - s.t));
    if (std::abs(exact_gap - half_margin) <= noise_budget_s) {
      if (s.warning) {
        ++boundary_ties;
      }
      continue;
    }
    const bool expected = exact_gap < half_margin;
    if (s.warning != expected) {
      ++decision_mismatches;
      continue;
    }
    if (s.warning) {
      if (!first_warning_t) {
        first_warning_t = s.t;
      }
      last_warning_t = s.t;
    }
  }

  report.datagrams_sent = sent.datagrams_sent;
  report.frames_received = received;
  text << "replay: " << sent.datagrams_sent << " datagrams at speed "
       << fixed(config.replay_speed, 1) << ", max schedule error "
       << fixed(sent.max_schedule_error_s * 1e3, 2) << " ms\n";
  text << "ima: " << received << " frames processed\n";

  report.analytic_window_s =
      analytic_warning_window(config, t_last_record - t_first_record);
  if (first_warning_t) {
    report.observed_window_s = std::make_pair(*first_warning_t, *last_warning_t);
  }

  // One broadcast period, plus the classification deadband.
  const double tolerance_s = 0.1 + noise_budget_s + 1e-9;
  bool pass = false;
  if (decision_mismatches > 0) {
    text << decision_mismatches << " samples contradict the analytic warning decision\n";
  } else if (!report.analytic_window_s && !report.observed_window_s) {
    text << "no warning expected, none observed\n";
    pass = true;
  } else if (report.analytic_window_s && report.observed_window_s) {
    const auto& [ab, ae] = *report.analytic_window_s;
    const auto& [ob, oe] = *report.observed_window_s;
    const bool window_ok =
        std::abs(ob - ab) <= tolerance_s && std::abs(oe - ae) <= tolerance_s;
    const bool text_ok = last_line_is_warning(report.last_warning_advisory);
    text << "warning window (" << fixed(ab, 3) << ", " << fixed(ae, 3) << ") observed ["
         << fixed(ob, 3) << ", " << fixed(oe, 3) << "], overlap "
         << (window_ok ? "OK" : "MISMATCH") << "\n";
    if (boundary_ties > 0) {
      text << boundary_ties << " boundary ties within 10 ms of t_safety/2 (excluded)\n";
    }
    pass = window_ok && text_ok;
  } else if (report.analytic_window_s) {
    const auto& [ab, ae] = *report.analytic_window_s;
    text << "warning window (" << fixed(ab, 3) << ", " << fixed(ae, 3)
         << ") expected but none observed\n";
  } else {
    const auto& [ob, oe] = *report.observed_window_s;
    text << "unexpected warning observed [" << fixed(ob, 3) << ", " << fixed(oe, 3) << "]\n";
  }

  text << (pass ? "PASS" : "FAIL") << "\n";
  report.pass = pass;
  report.text = text.str();
  return report;
}

}  // namespace v2x::demo
