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
#include <vector>

#include "v2x/errors.hpp"

namespace v2x::uper {

/// Bit stream ended before a field was fully read.
class Truncated : public Error {
public:
  using Error::Error;
};

/// A decoded value fell outside its declared constraint, or the stream
/// carried non-canonical padding / trailing data.
class ConstraintViolation : public Error {
public:
  using Error::Error;
};

/// Bits needed for a non-negative binary integer holding `max_offset`
/// (ceil(log2(range)) for a range of max_offset + 1 values).
constexpr unsigned bits_for_max_offset(std::uint64_t max_offset) {
  unsigned n = 0;
  while (max_offset != 0) {
    ++n;
    max_offset >>= 1;
  }
  return n;
}

/// MSB-first bit appender producing unaligned PER content. The final
/// byte is zero-padded on finish().
class BitWriter {
public:
  /// Append the low `bits` bits of `value`, most significant first.
  void write_bits(std::uint64_t value, unsigned bits);

  /// Constrained whole number: the offset from `lo` in the minimum
  /// number of bits for the range. `value` must lie in [lo, hi].
  void write_constrained(std::int64_t value, std::int64_t lo, std::int64_t hi);

  /// Length determinant of a size-constrained collection.
  void write_length(std::size_t count, std::size_t lo, std::size_t hi);

  /// Enumeration by index (no extension marker).
  void write_enumerated(unsigned index, unsigned count);

  /// One presence bit of an OPTIONAL-field bitmap.
  void write_flag(bool present);

  /// Fixed-size octet string: raw octets, bit-packed.
  void write_octets(std::span<const std::uint8_t> octets);

  std::size_t bit_count() const { return bit_count_; }

  /// Zero-pad to a whole byte and return the encoding.
  std::vector<std::uint8_t> finish() const;

private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bit_count_ = 0;
};

/// MSB-first bit reader over an unaligned PER encoding.
class BitReader {
public:
  explicit BitReader(std::span<const std::uint8_t> bytes)
      : bytes_(bytes), bit_count_(bytes.size() * 8) {}

  // The reader only views the buffer; reject temporaries outright.
  explicit BitReader(std::vector<std::uint8_t>&&) = delete;

  std::uint64_t read_bits(unsigned bits);
  std::int64_t read_constrained(std::int64_t lo, std::int64_t hi);
  std::size_t read_length(std::size_t lo, std::size_t hi);
  unsigned read_enumerated(unsigned count);
  bool read_flag();
  void read_octets(std::span<std::uint8_t> out);

  std::size_t bits_remaining() const { return bit_count_ - pos_; }

  /// After the outermost value: at most 7 bits may remain and they must
  /// all be zero (canonical padding). Anything else is an error.
  void expect_final_padding() const;

private:
  std::span<const std::uint8_t> bytes_;
  std::size_t bit_count_;
  std::size_t pos_ = 0;
};

}  // namespace v2x::uper
