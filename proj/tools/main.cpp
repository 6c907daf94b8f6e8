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

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "v2x/demo.hpp"
#include "v2x/export.hpp"
#include "v2x/geo.hpp"
#include "v2x/ima.hpp"
#include "v2x/j2735.hpp"
#include "v2x/pcap.hpp"
#include "v2x/render.hpp"
#include "v2x/replay.hpp"
#include "v2x/scenario.hpp"
#include "v2x/textfmt.hpp"

namespace {

using v2x::geo::GeoPoint;
using v2x::j2735::BsmCore;
using v2x::j2735::MessageFrame;
using v2x::pcap::CaptureFile;
using v2x::pcap::Encapsulation;

// Exit codes: 0 success, 1 input/parse errors, 2 data errors.
struct CmdError : std::runtime_error {
  int code;
  CmdError(int exit_code, const std::string& message)
      : std::runtime_error(message), code(exit_code) {}
};

std::atomic<bool> g_interrupted{false};

void handle_sigint(int) { g_interrupted.store(true); }

GeoPoint parse_geopoint(const std::string& text) {
  GeoPoint p;
  char extra = 0;
  const int n = std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &p.lat_deg, &p.lon_deg,
                            &p.elev_m, &extra);
  if (n != 2 && n != 3) {
    throw CmdError(1, "expected lat,lon[,elev_m]: " + text);
  }
  return p;
}

std::pair<std::string, std::uint16_t> parse_hostport(const std::string& text) {
  const std::size_t colon = text.rfind(':');
  if (colon == std::string::npos || colon + 1 >= text.size()) {
    throw CmdError(1, "expected host:port: " + text);
  }
  const int port = std::atoi(text.c_str() + colon + 1);
  if (port <= 0 || port > 65535) {
    throw CmdError(1, "bad port in " + text);
  }
  return {text.substr(0, colon), static_cast<std::uint16_t>(port)};
}

std::pair<int, int> parse_size(const std::string& text) {
  int w = 0, h = 0;
  if (std::sscanf(text.c_str(), "%dx%d", &w, &h) != 2 || w <= 0 || h <= 0) {
    throw CmdError(1, "expected WIDTHxHEIGHT: " + text);
  }
  return {w, h};
}

/// Flags shared by every capture-consuming subcommand.
struct EncapFlags {
  std::string kind = "raw";
  std::size_t skip = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--encap", kind, "Record framing: raw or eth-udp")
        ->check(CLI::IsMember({"raw", "eth-udp"}))
        ->capture_default_str();
    cmd->add_option("--skip", skip, "Bytes to skip per record (raw framing only)")
        ->capture_default_str();
  }

  Encapsulation value() const {
    Encapsulation e;
    e.kind = kind == "eth-udp" ? Encapsulation::Kind::ethernet_ipv4_udp
                               : Encapsulation::Kind::raw_payload;
    e.fixed_skip = skip;
    return e;
  }
};

CaptureFile load_capture(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw CmdError(1, "no such file: " + path);
  }
  std::ifstream probe(path, std::ios::binary);
  if (!probe) {
    throw CmdError(1, "cannot read: " + path);
  }
  probe.close();
  const v2x::pcap::ReadResult result = v2x::pcap::read_capture_file(path);
  if (result.truncated) {
    std::cerr << "warning: " << path << " ends with a truncated record; "
              << result.file.records.size() << " records read\n";
  }
  return result.file;
}

void cmd_decode(const std::string& in, const std::string& bsm_csv,
                const std::string& map_text, const Encapsulation& encap) {
  const CaptureFile capture = load_capture(in);

  std::vector<v2x::j2735::TimedBsm> bsm_rows;
  std::optional<v2x::j2735::MapData> first_map;
  std::size_t decoded = 0, spat_count = 0, map_count = 0, failed = 0;
  for (const auto& record : capture.records) {
    try {
      const MessageFrame frame =
          v2x::j2735::decode_frame(v2x::pcap::extract_payload(record, encap));
      ++decoded;
      if (const auto* bsm = std::get_if<BsmCore>(&frame.body)) {
        bsm_rows.push_back({record.time_s(capture.time_resolution), *bsm});
      } else if (const auto* map = std::get_if<v2x::j2735::MapData>(&frame.body)) {
        ++map_count;
        if (!first_map) {
          first_map = *map;
        }
      } else {
        ++spat_count;
      }
    } catch (const v2x::Error&) {
      ++failed;
    }
  }
  if (decoded == 0) {
    throw CmdError(2, "no decodable records in " + in);
  }

  if (!bsm_csv.empty()) {
    std::ofstream out(bsm_csv, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw CmdError(1, "cannot create " + bsm_csv);
    }
    out << v2x::j2735::bsm_to_csv(bsm_rows);
  }
  if (!map_text.empty()) {
    if (!first_map) {
      throw CmdError(2, "no geometry records in " + in);
    }
    std::ofstream out(map_text, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw CmdError(1, "cannot create " + map_text);
    }
    out << v2x::j2735::map_to_text(*first_map);
  }
  std::cout << "records " << capture.records.size() << ": " << bsm_rows.size() << " bsm, "
            << spat_count << " spat, " << map_count << " map, " << failed
            << " undecodable\n";
}

void cmd_listen(std::uint16_t port, const std::string& csv_path, std::size_t count) {
  v2x::replay::Listener listener(port);
  std::cerr << "listening on udp port " << listener.port() << "\n";

  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path, std::ios::binary | std::ios::trunc);
    if (!csv) {
      throw CmdError(1, "cannot create " + csv_path);
    }
    csv << v2x::j2735::bsm_to_csv({});
    csv.flush();
  }

  std::atomic<bool> stop{false};
  std::size_t delivered = 0;
  std::optional<double> t0;
  const auto stats = listener.run(
      [&](const v2x::replay::ReceivedMessage& msg) {
        if (!t0) {
          t0 = msg.arrival_monotonic_s;
        }
        const double t = msg.arrival_monotonic_s - *t0;
        if (const auto* bsm = std::get_if<BsmCore>(&msg.frame.body)) {
          if (csv.is_open()) {
            const v2x::j2735::TimedBsm row{t, *bsm};
            const std::string text = v2x::j2735::bsm_to_csv({&row, 1});
            csv << text.substr(text.find('\n') + 1);
            csv.flush();
          }
        }
        std::cout << "t=" << v2x::textfmt::fixed(t, 3) << " msg_id "
                  << msg.frame.message_id() << "\n";
        if (count != 0 && ++delivered >= count) {
          stop.store(true);
        }
        if (g_interrupted.load()) {
          stop.store(true);
        }
      },
      stop);
  std::cerr << "delivered " << stats.delivered << ", undecodable "
            << stats.decode_failures << "\n";
}

struct HostLogRow {
  double t = 0.0;
  GeoPoint position;
  double speed_mps = 0.0;
  double heading_deg = 0.0;
};

std::vector<HostLogRow> load_host_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw CmdError(1, "cannot read host log: " + path);
  }
  std::vector<HostLogRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("timestamp", 0) == 0) {
      continue;
    }
    HostLogRow row;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &row.t, &row.position.lat_deg,
                    &row.position.lon_deg, &row.speed_mps, &row.heading_deg) != 5) {
      throw CmdError(2, "bad host log line: " + line);
    }
    rows.push_back(row);
  }
  if (rows.empty()) {
    throw CmdError(2, "host log has no rows: " + path);
  }
  return rows;
}

HostLogRow host_at(const std::vector<HostLogRow>& rows, double t) {
  if (t <= rows.front().t) {
    return rows.front();
  }
  if (t >= rows.back().t) {
    return rows.back();
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (t <= rows[i].t) {
      const HostLogRow& a = rows[i - 1];
      const HostLogRow& b = rows[i];
      const double f = (t - a.t) / (b.t - a.t);
      HostLogRow out;
      out.t = t;
      out.position.lat_deg = a.position.lat_deg + f * (b.position.lat_deg - a.position.lat_deg);
      out.position.lon_deg = a.position.lon_deg + f * (b.position.lon_deg - a.position.lon_deg);
      out.position.elev_m = a.position.elev_m + f * (b.position.elev_m - a.position.elev_m);
      out.speed_mps = a.speed_mps + f * (b.speed_mps - a.speed_mps);
      out.heading_deg = a.heading_deg + f * (b.heading_deg - a.heading_deg);
      return out;
    }
  }
  return rows.back();
}

void cmd_ima(std::uint16_t port, const GeoPoint& ref, double t_safety,
             const std::string& host_log_path, std::size_t count, double timeout_s) {
  const std::vector<HostLogRow> host_log = load_host_log(host_log_path);
  v2x::replay::Listener listener(port);
  std::cerr << "ima listening on udp port " << listener.port() << "\n";

  v2x::ima::ImaApp app(v2x::ima::ImaConfig{t_safety, ref, timeout_s});
  std::atomic<bool> stop{false};
  std::size_t steps = 0;
  std::optional<double> t0;
  listener.run(
      [&](const v2x::replay::ReceivedMessage& msg) {
        if (!t0) {
          t0 = msg.arrival_monotonic_s;
        }
        const double t = msg.arrival_monotonic_s - *t0;
        const HostLogRow host_row = host_at(host_log, t);
        const v2x::ima::HostState host{host_row.position, host_row.speed_mps,
                                       host_row.heading_deg};
        const v2x::ima::Advisory advisory = app.step(host, msg, t);
        std::cout << "--- t=" << v2x::textfmt::fixed(t, 2) << "\n"
                  << v2x::ima::format_advisory(advisory);
        std::cout.flush();
        if ((count != 0 && ++steps >= count) || g_interrupted.load()) {
          stop.store(true);
        }
      },
      stop);
}

int run(int argc, char** argv) {
  CLI::App app{"Intersection message toolkit: decode, relocate, replay and "
               "visualize SPaT/MAP/BSM captures, and run a movement-assist "
               "application against replayed traffic"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read defaults from a key=value file");
  app.failure_message(CLI::FailureMessage::help);

  // decode
  auto* decode = app.add_subcommand("decode", "Decode a capture and export CSV / text");
  std::string decode_in, decode_bsm_csv, decode_map_text;
  EncapFlags decode_encap;
  decode->add_option("--in", decode_in, "Input capture file")->required();
  decode->add_option("--bsm-csv", decode_bsm_csv, "Write road-user rows to this CSV file");
  decode->add_option("--map-text", decode_map_text, "Write the first geometry message as text");
  decode_encap.add_to(decode);
  decode->callback(
      [&] { cmd_decode(decode_in, decode_bsm_csv, decode_map_text, decode_encap.value()); });

  // isolate
  auto* isolate = app.add_subcommand("isolate", "Keep only road-user (BSM) records");
  std::string isolate_in, isolate_out;
  EncapFlags isolate_encap;
  isolate->add_option("--in", isolate_in)->required();
  isolate->add_option("--out", isolate_out)->required();
  isolate_encap.add_to(isolate);
  isolate->callback([&] {
    const auto result =
        v2x::scenario::isolate_bsm(load_capture(isolate_in), isolate_encap.value());
    v2x::pcap::write_capture_file(isolate_out, result.capture);
    std::cout << "kept " << result.capture.records.size() << " records, dropped "
              << result.dropped_undecodable << " undecodable\n";
  });

  // relocate
  auto* relocate = app.add_subcommand("relocate", "Move a BSM capture to another intersection");
  std::string reloc_in, reloc_out, reloc_src, reloc_dst;
  double reloc_delta = 0.0;
  EncapFlags reloc_encap;
  relocate->add_option("--in", reloc_in)->required();
  relocate->add_option("--out", reloc_out)->required();
  relocate->add_option("--src-ref", reloc_src, "Source reference lat,lon[,elev]")->required();
  relocate->add_option("--dst-ref", reloc_dst, "Target reference lat,lon[,elev]")->required();
  relocate->add_option("--delta-heading", reloc_delta, "Rotation in degrees")
      ->capture_default_str();
  reloc_encap.add_to(relocate);
  relocate->callback([&] {
    v2x::scenario::RelocationSpec spec;
    spec.src_ref = parse_geopoint(reloc_src);
    spec.dst_ref = parse_geopoint(reloc_dst);
    spec.delta_heading_deg = reloc_delta;
    const auto result =
        v2x::scenario::relocate(load_capture(reloc_in), spec, reloc_encap.value());
    v2x::pcap::write_capture_file(reloc_out, result.capture);
    std::cout << "relocated " << result.capture.records.size() << " records ("
              << result.passed_through_unavailable << " without position)\n";
  });

  // filter
  auto* filter = app.add_subcommand("filter", "Keep road users approaching from one side");
  std::string filter_in, filter_out, filter_ref;
  double filter_center = 0.0, filter_half = 45.0;
  EncapFlags filter_encap;
  filter->add_option("--in", filter_in)->required();
  filter->add_option("--out", filter_out)->required();
  filter->add_option("--ref", filter_ref, "Intersection reference lat,lon")->required();
  filter->add_option("--center-bearing", filter_center, "Sector center in degrees")
      ->capture_default_str();
  filter->add_option("--half-width", filter_half, "Sector half-width in degrees")
      ->capture_default_str();
  filter_encap.add_to(filter);
  filter->callback([&] {
    const auto out = v2x::scenario::filter_approaching(
        load_capture(filter_in), parse_geopoint(filter_ref),
        v2x::scenario::ApproachFilter{filter_center, filter_half}, filter_encap.value());
    v2x::pcap::write_capture_file(filter_out, out);
    std::cout << "kept " << out.records.size() << " records\n";
  });

  // synth-signal
  auto* synth_signal =
      app.add_subcommand("synth-signal", "Generate a pedestrian-crossing signal capture");
  std::string ss_out, ss_ref;
  v2x::scenario::SignalSynthConfig ss_config;
  synth_signal->add_option("--out", ss_out)->required();
  synth_signal->add_option("--duration", ss_config.duration_s, "Seconds")
      ->capture_default_str();
  synth_signal->add_option("--press", ss_config.button_press_times,
                           "Pedestrian button press time (repeatable)");
  synth_signal->add_option("--walk", ss_config.walk_interval_s, "Walk interval seconds")
      ->capture_default_str();
  synth_signal->add_option("--ref", ss_ref, "Reference lat,lon[,elev]");
  synth_signal->add_option("--id", ss_config.intersection_id, "Intersection id")
      ->capture_default_str();
  synth_signal->callback([&] {
    if (!ss_ref.empty()) {
      ss_config.ref = parse_geopoint(ss_ref);
    }
    const auto capture = v2x::scenario::synth_signal_intersection(ss_config);
    v2x::pcap::write_capture_file(ss_out, capture);
    std::cout << "wrote " << capture.records.size() << " records\n";
  });

  // synth-traffic
  auto* synth_traffic =
      app.add_subcommand("synth-traffic", "Generate a four-way road-user capture");
  std::string st_out, st_ref;
  v2x::scenario::TrafficSynthConfig st_config;
  synth_traffic->add_option("--out", st_out)->required();
  synth_traffic->add_option("--duration", st_config.duration_s, "Seconds")
      ->capture_default_str();
  synth_traffic->add_option("--north", st_config.approach_counts[0], "Vehicles from north")
      ->capture_default_str();
  synth_traffic->add_option("--east", st_config.approach_counts[1], "Vehicles from east")
      ->capture_default_str();
  synth_traffic->add_option("--south", st_config.approach_counts[2], "Vehicles from south")
      ->capture_default_str();
  synth_traffic->add_option("--west", st_config.approach_counts[3], "Vehicles from west")
      ->capture_default_str();
  synth_traffic->add_flag("--pedestrian", st_config.include_pedestrian,
                          "Include one crossing pedestrian");
  synth_traffic->add_option("--ref", st_ref, "Reference lat,lon[,elev]");
  synth_traffic->add_option("--start-dist", st_config.start_distance_m,
                            "First vehicle start distance (m)")
      ->capture_default_str();
  synth_traffic->add_option("--gap", st_config.vehicle_gap_m, "Vehicle spacing (m)")
      ->capture_default_str();
  synth_traffic->add_option("--vehicle-speed", st_config.vehicle_speed_mps, "m/s")
      ->capture_default_str();
  synth_traffic->add_option("--id", st_config.intersection_id, "Intersection id")
      ->capture_default_str();
  synth_traffic->callback([&] {
    if (!st_ref.empty()) {
      st_config.ref = parse_geopoint(st_ref);
    }
    const auto capture = v2x::scenario::synth_traffic_intersection(st_config);
    v2x::pcap::write_capture_file(st_out, capture);
    std::cout << "wrote " << capture.records.size() << " records\n";
  });

  // render
  auto* render = app.add_subcommand("render", "Render a capture into SVG frames");
  std::string render_in, render_map, render_center, render_size = "1280x720",
              render_out, render_underlay;
  double render_mpp = 0.2, render_step = 0.1;
  EncapFlags render_encap;
  render->add_option("--in", render_in, "Capture to render")->required();
  render->add_option("--map", render_map, "Optional capture supplying the geometry");
  render->add_option("--center", render_center, "View center lat,lon")->required();
  render->add_option("--mpp", render_mpp, "Meters per pixel")->capture_default_str();
  render->add_option("--size", render_size, "WIDTHxHEIGHT")->capture_default_str();
  render->add_option("--step", render_step, "Seconds per frame")->capture_default_str();
  render->add_option("--out", render_out, "Output directory")->required();
  render->add_option("--underlay", render_underlay,
                     "Reference of a raster underlay image (not embedded)");
  render_encap.add_to(render);
  render->callback([&] {
    CaptureFile capture = load_capture(render_in);
    if (!render_map.empty()) {
      // Geometry from a second capture: inject its first decodable MAP
      // record at the head of the timeline.
      const CaptureFile map_capture = load_capture(render_map);
      for (const auto& record : map_capture.records) {
        try {
          const auto frame = v2x::j2735::decode_frame(
              v2x::pcap::extract_payload(record, render_encap.value()));
          if (frame.message_id() == v2x::j2735::kMessageIdMap) {
            v2x::pcap::CaptureRecord head = record;
            if (!capture.records.empty()) {
              head.ts_sec = capture.records.front().ts_sec;
              head.ts_frac = capture.records.front().ts_frac;
            }
            capture.records.insert(capture.records.begin(), std::move(head));
            break;
          }
        } catch (const v2x::Error&) {
        }
      }
    }
    v2x::render::Viewport vp;
    vp.center = parse_geopoint(render_center);
    vp.meters_per_pixel = render_mpp;
    const auto [w, h] = parse_size(render_size);
    vp.width_px = w;
    vp.height_px = h;
    vp.underlay_href = render_underlay;
    const auto result =
        v2x::render::render_sequence(capture, vp, render_step, render_encap.value());
    v2x::render::write_frames(render_out, result.frames);
    std::cout << "wrote " << result.frames.size() << " frames to " << render_out << " ("
              << result.undecodable_records << " undecodable records)\n";
  });

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "Send a capture as UDP datagrams");
  std::string replay_in, replay_dest;
  v2x::replay::ReplayConfig replay_config;
  EncapFlags replay_encap;
  replay_cmd->add_option("--in", replay_in)->required();
  replay_cmd->add_option("--dest", replay_dest, "host:port")->required();
  replay_cmd->add_option("--speed", replay_config.speed_factor, "Speed factor")
      ->capture_default_str();
  replay_cmd->add_option("--loop", replay_config.loop_count, "Replay count")
      ->capture_default_str();
  replay_encap.add_to(replay_cmd);
  replay_cmd->callback([&] {
    const auto [host, port] = parse_hostport(replay_dest);
    replay_config.host = host;
    replay_config.port = port;
    const auto report =
        v2x::replay::replay(load_capture(replay_in), replay_config, replay_encap.value());
    std::cout << "sent " << report.datagrams_sent << " datagrams, max schedule error "
              << v2x::textfmt::fixed(report.max_schedule_error_s * 1e3, 3) << " ms\n";
  });

  // listen
  auto* listen = app.add_subcommand("listen", "Receive and decode UDP messages");
  std::uint16_t listen_port = 0;
  std::string listen_csv;
  std::size_t listen_count = 0;
  listen->add_option("--port", listen_port, "UDP port (0 = ephemeral)")->required();
  listen->add_option("--csv", listen_csv, "Append road-user rows to this CSV file");
  listen->add_option("--count", listen_count, "Stop after N messages (0 = until SIGINT)")
      ->capture_default_str();
  listen->callback([&] { cmd_listen(listen_port, listen_csv, listen_count); });

  // ima
  auto* ima = app.add_subcommand("ima", "Run the movement-assist application");
  std::uint16_t ima_port = 0;
  std::string ima_ref, ima_host_log;
  double ima_tsafety = 3.0, ima_timeout = 2.0;
  std::size_t ima_count = 0;
  ima->add_option("--port", ima_port, "UDP port")->required();
  ima->add_option("--ref", ima_ref, "Intersection reference lat,lon")->required();
  ima->add_option("--tsafety", ima_tsafety, "Safety margin seconds")->capture_default_str();
  ima->add_option("--host-log", ima_host_log,
                  "Host trajectory CSV: timestamp,lat,lon,speed_mps,heading_deg "
                  "(timestamps relative to the first received message)")
      ->required();
  ima->add_option("--track-timeout", ima_timeout, "Track eviction seconds")
      ->capture_default_str();
  ima->add_option("--count", ima_count, "Stop after N messages (0 = until SIGINT)")
      ->capture_default_str();
  ima->callback([&] {
    cmd_ima(ima_port, parse_geopoint(ima_ref), ima_tsafety, ima_host_log, ima_count,
            ima_timeout);
  });

  // demo
  auto* demo = app.add_subcommand(
      "demo", "Full local loop: synth, filter, relocate, replay, movement assist");
  v2x::demo::DemoConfig demo_config;
  std::string demo_dst;
  demo->add_option("--host-speed", demo_config.host_speed_mps, "m/s")->capture_default_str();
  demo->add_option("--host-start", demo_config.host_start_m, "m")->capture_default_str();
  demo->add_option("--remote-speed", demo_config.remote_speed_mps, "m/s")
      ->capture_default_str();
  demo->add_option("--remote-start", demo_config.remote_start_m, "m")->capture_default_str();
  demo->add_option("--tsafety", demo_config.t_safety_s, "Safety margin seconds")
      ->capture_default_str();
  demo->add_option("--speed", demo_config.replay_speed, "Replay speed factor")
      ->capture_default_str();
  demo->add_option("--dst-ref", demo_dst, "Populated intersection lat,lon[,elev]");
  demo->add_option("--delta-heading", demo_config.delta_heading_deg, "Rotation degrees")
      ->capture_default_str();
  demo->add_option("--port", demo_config.port, "UDP port (0 = ephemeral)")
      ->capture_default_str();
  demo->callback([&] {
    if (!demo_dst.empty()) {
      demo_config.dst_ref = parse_geopoint(demo_dst);
    }
    const auto report = v2x::demo::run_pipeline_demo(demo_config);
    std::cout << report.text;
    if (!report.pass) {
      throw CmdError(2, "pipeline demo reported FAIL");
    }
  });

  std::signal(SIGINT, handle_sigint);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const CmdError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const v2x::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
