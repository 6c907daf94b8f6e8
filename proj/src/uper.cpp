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

#include "v2x/uper.hpp"

#include <stdexcept>

namespace v2x::uper {

void BitWriter::write_bits(std::uint64_t value, unsigned bits) {
  if (bits > 64) {
    throw std::invalid_argument("write_bits: width > 64");
  }
  if (bits < 64 && (value >> bits) != 0) {
    throw std::invalid_argument("write_bits: value does not fit width");
  }
  for (unsigned i = bits; i-- > 0;) {
    const unsigned bit = static_cast<unsigned>((value >> i) & 1u);
    const std::size_t byte_index = bit_count_ / 8;
    if (byte_index == bytes_.size()) {
      bytes_.push_back(0);
    }
    if (bit != 0) {
      bytes_[byte_index] |= static_cast<std::uint8_t>(0x80u >> (bit_count_ % 8));
    }
    ++bit_count_;
  }
}

void BitWriter::write_constrained(std::int64_t value, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) {
    throw std::invalid_argument("write_constrained: empty range");
  }
  if (value < lo || value > hi) {
    throw std::invalid_argument("write_constrained: value outside range");
  }
  const std::uint64_t max_offset =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  const std::uint64_t offset =
      static_cast<std::uint64_t>(value) - static_cast<std::uint64_t>(lo);
  write_bits(offset, bits_for_max_offset(max_offset));
}

void BitWriter::write_length(std::size_t count, std::size_t lo, std::size_t hi) {
  write_constrained(static_cast<std::int64_t>(count), static_cast<std::int64_t>(lo),
                    static_cast<std::int64_t>(hi));
}

void BitWriter::write_enumerated(unsigned index, unsigned count) {
  if (count == 0 || index >= count) {
    throw std::invalid_argument("write_enumerated: index outside enumeration");
  }
  write_constrained(index, 0, static_cast<std::int64_t>(count) - 1);
}

void BitWriter::write_flag(bool present) { write_bits(present ? 1 : 0, 1); }

void BitWriter::write_octets(std::span<const std::uint8_t> octets) {
  for (const std::uint8_t b : octets) {
    write_bits(b, 8);
  }
}

std::vector<std::uint8_t> BitWriter::finish() const { return bytes_; }

std::uint64_t BitReader::read_bits(unsigned bits) {
  if (bits > 64) {
    throw std::invalid_argument("read_bits: width > 64");
  }
  if (pos_ + bits > bit_count_) {
    throw Truncated("bit stream ended mid-field");
  }
  std::uint64_t value = 0;
  for (unsigned i = 0; i < bits; ++i) {
    const std::size_t byte_index = pos_ / 8;
    const unsigned bit =
        (bytes_[byte_index] >> (7 - (pos_ % 8))) & 1u;
    value = (value << 1) | bit;
    ++pos_;
  }
  return value;
}

std::int64_t BitReader::read_constrained(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) {
    throw std::invalid_argument("read_constrained: empty range");
  }
  const std::uint64_t max_offset =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  const std::uint64_t offset = read_bits(bits_for_max_offset(max_offset));
  if (offset > max_offset) {
    throw ConstraintViolation("decoded value outside constrained range");
  }
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + offset);
}

std::size_t BitReader::read_length(std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(read_constrained(static_cast<std::int64_t>(lo),
                                                   static_cast<std::int64_t>(hi)));
}

unsigned BitReader::read_enumerated(unsigned count) {
  if (count == 0) {
    throw std::invalid_argument("read_enumerated: empty enumeration");
  }
  return static_cast<unsigned>(read_constrained(0, static_cast<std::int64_t>(count) - 1));
}

bool BitReader::read_flag() { return read_bits(1) != 0; }

void BitReader::read_octets(std::span<std::uint8_t> out) {
  for (std::uint8_t& b : out) {
    b = static_cast<std::uint8_t>(read_bits(8));
  }
}

void BitReader::expect_final_padding() const {
  const std::size_t rest = bits_remaining();
  if (rest >= 8) {
    throw ConstraintViolation("trailing data after message");
  }
  // Peek the pad bits without disturbing position.
  for (std::size_t i = 0; i < rest; ++i) {
    const std::size_t p = pos_ + i;
    if ((bytes_[p / 8] >> (7 - (p % 8))) & 1u) {
      throw ConstraintViolation("non-zero padding bits");
    }
  }
}

}  // namespace v2x::uper
