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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "v2x/j2735.hpp"

namespace v2x::j2735 {

struct TimedBsm {
  double timestamp_s = 0.0;
  BsmCore bsm;
};

/// CSV export of BSM content in engineering units. Header row
/// `timestamp,id_hex,msg_count,sec_mark_ms,lat_deg,lon_deg,elev_m,speed_mps,heading_deg,role`,
/// one row per frame, LF line endings, unavailable codes as empty cells.
std::string bsm_to_csv(std::span<const TimedBsm> frames);

/// Indented value-notation-style text of intersection geometry, for human
/// reading and golden-file comparison. Deterministic.
std::string map_to_text(const MapData& map);

}  // namespace v2x::j2735
