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

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "v2x/j2735.hpp"
#include "v2x/pcap.hpp"

namespace v2x::replay {

class SocketError : public Error {
public:
  using Error::Error;
};

class BindError : public Error {
public:
  using Error::Error;
};

struct ReplayConfig {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  double speed_factor = 1.0;  // > 0; 1.0 = original timing
  int loop_count = 1;         // >= 1
};

struct ReplayReport {
  std::size_t datagrams_sent = 0;
  double max_schedule_error_s = 0.0;
  /// Signed send-time error against the absolute schedule, one per datagram.
  std::vector<double> schedule_errors_s;
};

/// Send each record's extracted payload as one UDP datagram, pacing with the
/// recorded inter-record gaps divided by speed_factor (negative gaps replay
/// with zero wait). Scheduling is absolute against a monotonic clock, so
/// error does not accumulate. An unreachable destination is not an error.
ReplayReport replay(const pcap::CaptureFile& capture, const ReplayConfig& config,
                    const pcap::Encapsulation& encap);

struct ReceivedMessage {
  double arrival_monotonic_s = 0.0;
  j2735::MessageFrame frame;
};

struct ListenStats {
  std::size_t delivered = 0;
  std::size_t decode_failures = 0;
};

/// UDP listener decoding each datagram as a message frame. Valid frames are
/// handed to the sink in arrival order from the calling thread; undecodable
/// datagrams are counted and skipped.
class Listener {
public:
  /// Binds immediately (port 0 picks an ephemeral port). Throws BindError.
  explicit Listener(std::uint16_t port);
  ~Listener();

  Listener(const Listener&) = delete;
  Listener& operator=(const Listener&) = delete;

  std::uint16_t port() const { return port_; }

  using Sink = std::function<void(const ReceivedMessage&)>;

  /// Poll for datagrams until `stop` becomes true; returns the tally.
  ListenStats run(const Sink& sink, const std::atomic<bool>& stop);

private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

/// Fixed-capacity handoff queue between a producer (listener thread) and a
/// consumer; when full the oldest element is discarded and counted.
template <typename T>
class BoundedQueue {
public:
  explicit BoundedQueue(std::size_t capacity) : capacity_(capacity) {}

  void push(T value) {
    std::lock_guard lock(mutex_);
    if (items_.size() == capacity_) {
      items_.pop_front();
      ++dropped_;
    }
    items_.push_back(std::move(value));
    ready_.notify_one();
  }

  /// Pop one element, waiting up to `timeout_s`. False on timeout.
  bool pop(T& out, double timeout_s) {
    std::unique_lock lock(mutex_);
    if (!ready_.wait_for(lock, std::chrono::duration<double>(timeout_s),
                         [this] { return !items_.empty(); })) {
      return false;
    }
    out = std::move(items_.front());
    items_.pop_front();
    return true;
  }

  std::size_t dropped() const {
    std::lock_guard lock(mutex_);
    return dropped_;
  }

private:
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<T> items_;
  std::size_t dropped_ = 0;
};

/// Monotonic clock reading in seconds, shared by replay and listeners.
double monotonic_now_s();

}  // namespace v2x::replay
