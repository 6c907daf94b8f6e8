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

#include <array>
#include <cstdint>
#include <cstdio>
#include <string>

namespace v2x::textfmt {

/// Fixed-point decimal with `decimals` digits, '.' separator, no locale.
inline std::string fixed(double value, int decimals) {
  std::array<char, 64> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.*f", decimals, value);
  return std::string(buf.data(), n > 0 ? static_cast<std::size_t>(n) : 0);
}

/// fixed() with trailing zeros (and a bare trailing dot) removed: 10.00 -> "10".
inline std::string trimmed(double value, int max_decimals) {
  std::string s = fixed(value, max_decimals);
  if (s.find('.') == std::string::npos) {
    return s;
  }
  std::size_t last = s.find_last_not_of('0');
  if (s[last] == '.') {
    --last;
  }
  return s.substr(0, last + 1);
}

/// Lowercase hex of a 4-octet identifier, e.g. "deadbeef".
inline std::string hex_id(const std::array<std::uint8_t, 4>& id) {
  std::array<char, 9> buf{};
  std::snprintf(buf.data(), buf.size(), "%02x%02x%02x%02x", id[0], id[1], id[2], id[3]);
  return std::string(buf.data(), 8);
}

}  // namespace v2x::textfmt
