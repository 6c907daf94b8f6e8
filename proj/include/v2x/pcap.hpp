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

#include "v2x/errors.hpp"

namespace v2x::pcap {

// Classic capture file layout: 24-byte global header
// (magic u32, version u16.u16 = 2.4, thiszone i32 = 0, sigfigs u32 = 0,
// snaplen u32, link_type u32) followed by 16-byte record headers
// (ts_sec, ts_frac, caplen, origlen) and caplen payload bytes. All header
// integers follow the byte order announced by the magic.

inline constexpr std::uint32_t kMagicMicro = 0xA1B2C3D4;
inline constexpr std::uint32_t kMagicMicroSwapped = 0xD4C3B2A1;
inline constexpr std::uint32_t kMagicNano = 0xA1B23C4D;
inline constexpr std::uint32_t kMagicNanoSwapped = 0x4D3CB2A1;

inline constexpr std::uint32_t kLinkTypeEthernet = 1;
// Captures whose records carry bare application payloads (toolkit output).
inline constexpr std::uint32_t kLinkTypeUser0 = 147;

enum class ByteOrder { native, swapped };
enum class TimeResolution { micro, nano };

class UnknownMagic : public Error {
public:
  using Error::Error;
};

class OversizedRecord : public Error {
public:
  using Error::Error;
};

class NotUdp : public Error {
public:
  using Error::Error;
};

class TooShort : public Error {
public:
  using Error::Error;
};

struct CaptureRecord {
  std::uint32_t ts_sec = 0;
  std::uint32_t ts_frac = 0;  // microseconds or nanoseconds per file resolution
  std::vector<std::uint8_t> payload;
  std::uint32_t original_length = 0;

  double time_s(TimeResolution res) const {
    const double denom = res == TimeResolution::micro ? 1e6 : 1e9;
    return static_cast<double>(ts_sec) + static_cast<double>(ts_frac) / denom;
  }

  bool operator==(const CaptureRecord&) const = default;
};

struct CaptureFile {
  ByteOrder byte_order = ByteOrder::native;
  TimeResolution time_resolution = TimeResolution::micro;
  std::uint32_t link_type = kLinkTypeUser0;
  std::vector<CaptureRecord> records;

  double record_time_s(std::size_t i) const {
    return records[i].time_s(time_resolution);
  }
  /// Time between first and last record, 0 for fewer than two records.
  double span_s() const;

  bool operator==(const CaptureFile&) const = default;
};

struct ReadResult {
  CaptureFile file;
  bool truncated = false;              // last record header promised more bytes
  bool timestamps_out_of_order = false;  // preserved, only flagged
};

/// Parse a classic capture byte stream. Throws UnknownMagic; a short final
/// record sets `truncated` instead of failing.
ReadResult read_capture(std::span<const std::uint8_t> source);

/// Serialize a capture. Inverse of read_capture for every valid file, and
/// deterministic. Throws OversizedRecord / Error on invariant violations.
std::vector<std::uint8_t> write_capture(const CaptureFile& file);

ReadResult read_capture_file(const std::string& path);
void write_capture_file(const std::string& path, const CaptureFile& file);

struct Encapsulation {
  enum class Kind { raw_payload, ethernet_ipv4_udp };
  Kind kind = Kind::raw_payload;
  std::size_t fixed_skip = 0;  // raw_payload only
};

/// Application bytes inside one record: the UDP payload for
/// ethernet_ipv4_udp, or the record payload after `fixed_skip` for
/// raw_payload. Throws NotUdp / TooShort.
std::vector<std::uint8_t> extract_payload(const CaptureRecord& record,
                                          const Encapsulation& encap);

}  // namespace v2x::pcap
