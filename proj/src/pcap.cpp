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

#include "v2x/pcap.hpp"

#include <fstream>
#include <limits>

namespace v2x::pcap {

namespace {

constexpr std::size_t kGlobalHeaderSize = 24;
constexpr std::size_t kRecordHeaderSize = 16;

std::uint32_t load_u32(const std::uint8_t* p, bool swap) {
  std::uint32_t v = static_cast<std::uint32_t>(p[0]) |
                    static_cast<std::uint32_t>(p[1]) << 8 |
                    static_cast<std::uint32_t>(p[2]) << 16 |
                    static_cast<std::uint32_t>(p[3]) << 24;
  if (swap) {
    v = ((v & 0x000000FFu) << 24) | ((v & 0x0000FF00u) << 8) |
        ((v & 0x00FF0000u) >> 8) | ((v & 0xFF000000u) >> 24);
  }
  return v;
}

void store_u32(std::vector<std::uint8_t>& out, std::uint32_t v, bool swap) {
  if (swap) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
  } else {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
  }
}

void store_u16(std::vector<std::uint8_t>& out, std::uint16_t v, bool swap) {
  if (swap) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
  } else {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
  }
}

std::uint32_t frac_limit(TimeResolution res) {
  return res == TimeResolution::micro ? 1000000u : 1000000000u;
}

}  // namespace

double CaptureFile::span_s() const {
  if (records.size() < 2) {
    return 0.0;
  }
  return records.back().time_s(time_resolution) - records.front().time_s(time_resolution);
}

ReadResult read_capture(std::span<const std::uint8_t> source) {
  if (source.size() < kGlobalHeaderSize) {
    throw UnknownMagic("stream shorter than a capture global header");
  }

  // The magic is written in the producer's byte order; reading it unswapped
  // tells us whether every other header integer needs swapping.
  const std::uint32_t magic = load_u32(source.data(), false);
  ReadResult result;
  CaptureFile& file = result.file;
  switch (magic) {
    case kMagicMicro:
      file.byte_order = ByteOrder::native;
      file.time_resolution = TimeResolution::micro;
      break;
    case kMagicNano:
      file.byte_order = ByteOrder::native;
      file.time_resolution = TimeResolution::nano;
      break;
    case kMagicMicroSwapped:
      file.byte_order = ByteOrder::swapped;
      file.time_resolution = TimeResolution::micro;
      break;
    case kMagicNanoSwapped:
      file.byte_order = ByteOrder::swapped;
      file.time_resolution = TimeResolution::nano;
      break;
    default:
      throw UnknownMagic("not a classic capture file (bad magic)");
  }
  const bool swap = file.byte_order == ByteOrder::swapped;
  file.link_type = load_u32(source.data() + 20, swap);

  std::size_t pos = kGlobalHeaderSize;
  while (pos < source.size()) {
    if (pos + kRecordHeaderSize > source.size()) {
      result.truncated = true;
      break;
    }
    CaptureRecord record;
    record.ts_sec = load_u32(source.data() + pos, swap);
    record.ts_frac = load_u32(source.data() + pos + 4, swap);
    const std::uint32_t caplen = load_u32(source.data() + pos + 8, swap);
    record.original_length = load_u32(source.data() + pos + 12, swap);
    pos += kRecordHeaderSize;
    if (pos + caplen > source.size()) {
      result.truncated = true;
      break;
    }
    record.payload.assign(source.begin() + static_cast<std::ptrdiff_t>(pos),
                          source.begin() + static_cast<std::ptrdiff_t>(pos + caplen));
    pos += caplen;
    file.records.push_back(std::move(record));
  }

  for (std::size_t i = 1; i < file.records.size(); ++i) {
    const CaptureRecord& a = file.records[i - 1];
    const CaptureRecord& b = file.records[i];
    if (b.ts_sec < a.ts_sec || (b.ts_sec == a.ts_sec && b.ts_frac < a.ts_frac)) {
      result.timestamps_out_of_order = true;
      break;
    }
  }
  return result;
}

std::vector<std::uint8_t> write_capture(const CaptureFile& file) {
  const bool swap = file.byte_order == ByteOrder::swapped;
  const std::uint32_t magic =
      file.time_resolution == TimeResolution::micro ? kMagicMicro : kMagicNano;

  std::vector<std::uint8_t> out;
  store_u32(out, magic, swap);
  store_u16(out, 2, swap);
  store_u16(out, 4, swap);
  store_u32(out, 0, swap);  // thiszone
  store_u32(out, 0, swap);  // sigfigs
  store_u32(out, 65535, swap);
  store_u32(out, file.link_type, swap);

  for (std::size_t i = 0; i < file.records.size(); ++i) {
    const CaptureRecord& r = file.records[i];
    if (r.payload.size() > std::numeric_limits<std::uint32_t>::max()) {
      throw OversizedRecord("record " + std::to_string(i) +
                            " payload exceeds the 32-bit capture-length field");
    }
    const auto caplen = static_cast<std::uint32_t>(r.payload.size());
    if (caplen > r.original_length) {
      throw Error("record " + std::to_string(i) +
                  " payload longer than its original_length");
    }
    if (r.ts_frac >= frac_limit(file.time_resolution)) {
      throw Error("record " + std::to_string(i) +
                  " ts_fraction outside the file's time resolution");
    }
    store_u32(out, r.ts_sec, swap);
    store_u32(out, r.ts_frac, swap);
    store_u32(out, caplen, swap);
    store_u32(out, r.original_length, swap);
    out.insert(out.end(), r.payload.begin(), r.payload.end());
  }
  return out;
}

ReadResult read_capture_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open capture file: " + path);
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return read_capture(bytes);
}

void write_capture_file(const std::string& path, const CaptureFile& file) {
  const std::vector<std::uint8_t> bytes = write_capture(file);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("cannot create capture file: " + path);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error("short write to capture file: " + path);
  }
}

std::vector<std::uint8_t> extract_payload(const CaptureRecord& record,
                                          const Encapsulation& encap) {
  const std::vector<std::uint8_t>& p = record.payload;

  if (encap.kind == Encapsulation::Kind::raw_payload) {
    if (encap.fixed_skip > p.size()) {
      throw TooShort("fixed skip exceeds record payload");
    }
    return std::vector<std::uint8_t>(p.begin() + static_cast<std::ptrdiff_t>(encap.fixed_skip),
                                     p.end());
  }

  // Ethernet II + IPv4 + UDP.
  constexpr std::size_t kEthHeader = 14;
  if (p.size() < kEthHeader) {
    throw TooShort("record shorter than an Ethernet header");
  }
  const std::uint16_t ethertype = static_cast<std::uint16_t>(p[12] << 8 | p[13]);
  if (ethertype != 0x0800) {
    throw NotUdp("ethertype is not IPv4");
  }
  if (p.size() < kEthHeader + 20) {
    throw TooShort("record shorter than an IPv4 header");
  }
  const std::uint8_t version = p[kEthHeader] >> 4;
  const std::size_t ihl = (p[kEthHeader] & 0x0F) * 4u;
  if (version != 4 || ihl < 20) {
    throw NotUdp("malformed IPv4 header");
  }
  if (p[kEthHeader + 9] != 17) {
    throw NotUdp("IP protocol is not UDP");
  }
  const std::size_t udp_off = kEthHeader + ihl;
  if (p.size() < udp_off + 8) {
    throw TooShort("record shorter than a UDP header");
  }
  const std::size_t udp_len = static_cast<std::size_t>(p[udp_off + 4]) << 8 | p[udp_off + 5];
  if (udp_len < 8 || p.size() < udp_off + udp_len) {
    throw TooShort("UDP length exceeds record payload");
  }
  return std::vector<std::uint8_t>(p.begin() + static_cast<std::ptrdiff_t>(udp_off + 8),
                                   p.begin() + static_cast<std::ptrdiff_t>(udp_off + udp_len));
}

}  // namespace v2x::pcap
