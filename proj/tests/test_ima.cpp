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

#include <doctest.h>

#include <cmath>

#include "testutil.hpp"
#include "v2x/ima.hpp"

using namespace v2x;
using namespace v2x::ima;

namespace {

const geo::GeoPoint kRef{40.0, -83.0, 0.0};

replay::ReceivedMessage bsm_message(const geo::GeoPoint& ref, double north_m,
                                    double speed_mps, double heading_deg,
                                    j2735::TemporaryId id, double arrival) {
  const geo::GeoPoint pos = geo::from_local(ref, geo::LocalPoint{0.0, north_m, 0.0});
  j2735::BsmCore b;
  b.temporary_id = id;
  b.latitude = static_cast<std::int32_t>(std::llround(pos.lat_deg * 1e7));
  b.longitude = static_cast<std::int32_t>(std::llround(pos.lon_deg * 1e7));
  b.elevation = 0;
  b.speed = static_cast<std::uint16_t>(std::llround(speed_mps / 0.02));
  b.heading = static_cast<std::uint16_t>(std::llround(heading_deg / 0.0125)) % 28800;
  return replay::ReceivedMessage{arrival, j2735::MessageFrame::from(b)};
}

HostState host_approaching(double south_m, double speed_mps) {
  HostState h;
  h.position = geo::from_local(kRef, geo::LocalPoint{0.0, -south_m, 0.0});
  h.speed_mps = speed_mps;
  h.heading_deg = 0.0;
  return h;
}

}  // namespace

TEST_CASE("time to intersection") {
  CHECK(*time_to_intersection(30.0, 10.0) == doctest::Approx(3.0));
  CHECK(*time_to_intersection(0.0, 5.0) == 0.0);
  CHECK_FALSE(time_to_intersection(100.0, 0.0).has_value());
  CHECK_THROWS_AS(time_to_intersection(-1.0, 5.0), NegativeInput);
  CHECK_THROWS_AS(time_to_intersection(1.0, -5.0), NegativeInput);
}

TEST_CASE("warning comparison is strict and symmetric in the gap") {
  CHECK(check_warning(5.0, 6.0, 3.0));
  CHECK_FALSE(check_warning(6.0 + 1.5, 6.0, 3.0));  // boundary excluded
  CHECK_FALSE(check_warning(6.0 - 1.5, 6.0, 3.0));
  CHECK(check_warning(4.0, 4.0, 3.0));
  CHECK(check_warning(4.0, 4.0, 0.001));

  for (double t = 0.0; t < 20.0; t += 0.7) {
    for (double gap = -3.0; gap <= 3.0; gap += 0.37) {
      const bool a = check_warning(t + gap, t, 3.0);
      const bool b = check_warning(t, t + gap, 3.0);
      CHECK(a == (std::abs(gap) < 1.5));
      CHECK(a == b);
    }
  }
}

TEST_CASE("pipeline agrees with direct evaluation on the full grid") {
  // d in {0,5,...,200} m, v in {1..20} m/s for both vehicles, strictly
  // evaluated both through the pipeline and by the inequality itself.
  std::size_t mismatches = 0;
  for (int dh = 0; dh <= 200; dh += 5) {
    for (int dr = 0; dr <= 200; dr += 5) {
      for (int vh = 1; vh <= 20; ++vh) {
        for (int vr = 1; vr <= 20; ++vr) {
          const auto th = time_to_intersection(dh, vh);
          const auto tr = time_to_intersection(dr, vr);
          const bool pipeline = th && tr && check_warning(*th, *tr, 3.0);
          const double t_host = static_cast<double>(dh) / vh;
          const double t_remote = static_cast<double>(dr) / vr;
          const bool direct =
              t_remote - 1.5 < t_host && t_host < t_remote + 1.5;
          if (pipeline != direct) {
            ++mismatches;
          }
        }
      }
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("a conflicting remote raises the warning") {
  ImaApp app(ImaConfig{3.0, kRef, 2.0});
  // Host 50 m out at 10 m/s, remote 60 m out at 10 m/s: |5 - 6| < 1.5.
  const Advisory advisory = app.step(host_approaching(50.0, 10.0),
                                     bsm_message(kRef, 60.0, 10.0, 180.0, {1, 2, 3, 4}, 0.0),
                                     0.0);
  REQUIRE(advisory.tracks.size() == 1);
  CHECK(std::abs(advisory.tracks[0].distance_m - 60.0) < 0.05);
  CHECK(advisory.warning);
  REQUIRE(advisory.offending.has_value());
  CHECK(advisory.offending->id == j2735::TemporaryId{1, 2, 3, 4});
}

TEST_CASE("a stationary host never gets a warning") {
  ImaApp app(ImaConfig{3.0, kRef, 2.0});
  const Advisory advisory = app.step(host_approaching(50.0, 0.0),
                                     bsm_message(kRef, 1.0, 10.0, 180.0, {1, 1, 1, 1}, 0.0),
                                     0.0);
  CHECK_FALSE(advisory.warning);
  CHECK_FALSE(advisory.t_host_s.has_value());
}

TEST_CASE("a stationary remote never raises a warning") {
  ImaApp app(ImaConfig{3.0, kRef, 2.0});
  const Advisory advisory = app.step(host_approaching(0.5, 10.0),
                                     bsm_message(kRef, 0.5, 0.0, 180.0, {2, 2, 2, 2}, 0.0),
                                     0.0);
  REQUIRE(advisory.tracks.size() == 1);
  CHECK_FALSE(advisory.warning);
}

TEST_CASE("tracks expire after the timeout") {
  ImaApp app(ImaConfig{3.0, kRef, 2.0});
  app.step(host_approaching(500.0, 10.0),
           bsm_message(kRef, 100.0, 10.0, 180.0, {0xAA, 0, 0, 1}, 0.0), 0.0);
  Advisory a1 = app.step(host_approaching(500.0, 10.0),
                         bsm_message(kRef, 110.0, 10.0, 180.0, {0xAA, 0, 0, 2}, 1.9), 1.9);
  CHECK(a1.tracks.size() == 2);  // both still live at +1.9 s

  Advisory a2 = app.step(host_approaching(500.0, 10.0),
                         bsm_message(kRef, 120.0, 10.0, 180.0, {0xAA, 0, 0, 3}, 2.5), 2.5);
  REQUIRE(a2.tracks.size() == 2);  // the t=0 track is gone
  CHECK(a2.tracks[0].id == j2735::TemporaryId{0xAA, 0, 0, 2});
  CHECK(a2.tracks[1].id == j2735::TemporaryId{0xAA, 0, 0, 3});
}

TEST_CASE("non-BSM messages leave the tracks untouched") {
  ImaApp app(ImaConfig{3.0, kRef, 2.0});
  app.step(host_approaching(100.0, 10.0),
           bsm_message(kRef, 100.0, 10.0, 180.0, {7, 7, 7, 7}, 0.0), 0.0);

  replay::ReceivedMessage spat_msg;
  spat_msg.arrival_monotonic_s = 0.1;
  j2735::SpatData spat;
  spat.movements.push_back({1, j2735::MovementEvent::dark, 0});
  spat_msg.frame = j2735::MessageFrame::from(spat);
  const Advisory advisory = app.step(host_approaching(100.0, 10.0), spat_msg, 0.1);
  CHECK(advisory.tracks.size() == 1);
  CHECK(app.skipped_unusable() == 0);
}

TEST_CASE("messages without usable kinematics are skipped") {
  ImaApp app(ImaConfig{3.0, kRef, 2.0});
  replay::ReceivedMessage msg;
  msg.arrival_monotonic_s = 0.0;
  j2735::BsmCore b;  // all unavailable
  b.temporary_id = {3, 3, 3, 3};
  msg.frame = j2735::MessageFrame::from(b);
  const Advisory advisory = app.step(host_approaching(100.0, 10.0), msg, 0.0);
  CHECK(advisory.tracks.empty());
  CHECK(app.skipped_unusable() == 1);
}

TEST_CASE("warning persists under constant closing motion") {
  ImaApp app(ImaConfig{3.0, kRef, 2.0});
  bool warned = false;
  for (int k = 0; k <= 40; ++k) {
    const double t = k * 0.1;
    const double host_d = 50.0 - 10.0 * t;
    const double remote_d = 56.0 - 10.0 * t;
    if (host_d <= 0.0 || remote_d <= 0.0) {
      break;
    }
    const Advisory advisory =
        app.step(host_approaching(host_d, 10.0),
                 bsm_message(kRef, remote_d, 10.0, 180.0, {0xEE, 0, 0, 1}, t), t);
    if (warned) {
      CHECK(advisory.warning);  // once raised, it stays while both approach
    }
    warned = warned || advisory.warning;
  }
  CHECK(warned);
}

TEST_CASE("advisory text matches the driver-facing format") {
  CHECK(format_advisory(Advisory{}) == "");

  Advisory one;
  RemoteTrack t;
  t.id = {0x1A, 0x02, 0xAB, 0xCD};
  t.distance_m = 42.04;
  t.speed_mps = 10.01;
  t.heading_deg = 180.0;
  one.tracks.push_back(t);
  const std::string plain = format_advisory(one);
  CHECK(plain == "id=1a02abcd dist=42.0 speed=10.0 hdg=180.0\n");
  CHECK(plain.find("IMA WARNING") == std::string::npos);

  Advisory warn = one;
  warn.warning = true;
  warn.offending = t;
  const std::string text = format_advisory(warn);
  const std::size_t last_line_start = text.rfind('\n', text.size() - 2) + 1;
  CHECK(text.substr(last_line_start).rfind("IMA WARNING: ", 0) == 0);
  CHECK(text.substr(last_line_start) == "IMA WARNING: VEHICLE 1a02abcd dist=42.0 speed=10.0\n");
}
