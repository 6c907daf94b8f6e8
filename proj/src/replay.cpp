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

#include "v2x/replay.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstring>
#include <thread>

namespace v2x::replay {

namespace {

using Clock = std::chrono::steady_clock;

double to_seconds(Clock::duration d) {
  return std::chrono::duration_cast<std::chrono::duration<double>>(d).count();
}

/// Sleep until `target`, finishing with a short spin for sub-millisecond
/// accuracy on the final stretch.
void sleep_until_precise(Clock::time_point target) {
  constexpr auto kSpinWindow = std::chrono::microseconds(500);
  const Clock::time_point coarse = target - kSpinWindow;
  if (Clock::now() < coarse) {
    std::this_thread::sleep_until(coarse);
  }
  while (Clock::now() < target) {
    // spin
  }
}

sockaddr_in make_destination(const std::string& host, std::uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    if (host == "localhost") {
      addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    } else {
      throw SocketError("destination must be an IPv4 address: " + host);
    }
  }
  return addr;
}

}  // namespace

double monotonic_now_s() { return to_seconds(Clock::now().time_since_epoch()); }

ReplayReport replay(const pcap::CaptureFile& capture, const ReplayConfig& config,
                    const pcap::Encapsulation& encap) {
  if (capture.records.empty()) {
    throw Error("cannot replay an empty capture");
  }
  if (!(config.speed_factor > 0.0)) {
    throw Error("speed_factor must be > 0");
  }
  if (config.loop_count < 1) {
    throw Error("loop_count must be >= 1");
  }

  // Extract payloads up front so pacing is not disturbed by decode work.
  std::vector<std::vector<std::uint8_t>> payloads;
  payloads.reserve(capture.records.size());
  for (const pcap::CaptureRecord& r : capture.records) {
    payloads.push_back(pcap::extract_payload(r, encap));
  }

  const int fd = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (fd < 0) {
    throw SocketError(std::string("socket: ") + std::strerror(errno));
  }
  const sockaddr_in dest = make_destination(config.host, config.port);

  ReplayReport report;
  const Clock::time_point start = Clock::now();
  std::chrono::duration<double> offset{0.0};

  for (int loop = 0; loop < config.loop_count; ++loop) {
    for (std::size_t i = 0; i < capture.records.size(); ++i) {
      if (i > 0) {
        const double gap =
            capture.record_time_s(i) - capture.record_time_s(i - 1);
        offset += std::chrono::duration<double>(std::max(gap, 0.0) / config.speed_factor);
      }
      const Clock::time_point target =
          start + std::chrono::duration_cast<Clock::duration>(offset);
      sleep_until_precise(target);
      const double error = to_seconds(Clock::now() - target);

      const auto sent = ::sendto(fd, payloads[i].data(), payloads[i].size(), 0,
                                 reinterpret_cast<const sockaddr*>(&dest), sizeof(dest));
      if (sent < 0 && errno != ECONNREFUSED) {
        ::close(fd);
        throw SocketError(std::string("sendto: ") + std::strerror(errno));
      }
      ++report.datagrams_sent;
      report.schedule_errors_s.push_back(error);
      report.max_schedule_error_s = std::max(report.max_schedule_error_s, std::abs(error));
    }
  }
  ::close(fd);
  return report;
}

Listener::Listener(std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (fd_ < 0) {
    throw BindError(std::string("socket: ") + std::strerror(errno));
  }

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = htons(port);
  if (::bind(fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
    const std::string reason = std::strerror(errno);
    ::close(fd_);
    fd_ = -1;
    throw BindError("bind to port " + std::to_string(port) + ": " + reason);
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len) == 0) {
    port_ = ntohs(bound.sin_port);
  } else {
    port_ = port;
  }
}

Listener::~Listener() {
  if (fd_ >= 0) {
    ::close(fd_);
  }
}

ListenStats Listener::run(const Sink& sink, const std::atomic<bool>& stop) {
  ListenStats stats;
  std::vector<std::uint8_t> buffer(65536);

  while (!stop.load(std::memory_order_relaxed)) {
    pollfd pfd{fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 20);
    if (ready <= 0) {
      continue;
    }
    const auto n = ::recvfrom(fd_, buffer.data(), buffer.size(), 0, nullptr, nullptr);
    if (n < 0) {
      continue;
    }
    const double arrival = monotonic_now_s();
    ReceivedMessage msg;
    msg.arrival_monotonic_s = arrival;
    try {
      msg.frame = j2735::decode_frame(
          std::span<const std::uint8_t>(buffer.data(), static_cast<std::size_t>(n)));
    } catch (const Error&) {
      ++stats.decode_failures;
      continue;
    }
    sink(msg);
    ++stats.delivered;
  }
  return stats;
}

}  // namespace v2x::replay
