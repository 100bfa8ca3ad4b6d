// Copyright 2026 The Heatgear Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GEAR_GEO_H3_INDEX_HPP
#define GEAR_GEO_H3_INDEX_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace gear::geo {

/// A cell index of the H3 hierarchical hexagonal grid (h3geo.org).
/// This is a self-contained port of the published reference indexing
/// routines; it is validated against reference test vectors in the
/// test suite.
using CellIndex = std::uint64_t;

struct LatLngDeg {
    double lat = 0.0;  // degrees, [-90, 90]
    double lng = 0.0;  // degrees, [-180, 180]
};

inline constexpr int kMaxCellResolution = 15;

/// Index the cell containing (lat, lng) at the given resolution.
/// Returns nullopt for non-finite coordinates or a resolution outside 0..15.
std::optional<CellIndex> cell_from_lat_lng(LatLngDeg point, int resolution);

/// Centroid of a valid cell.
std::optional<LatLngDeg> cell_to_lat_lng(CellIndex cell);

bool is_valid_cell(CellIndex cell);
int cell_resolution(CellIndex cell);
bool is_pentagon(CellIndex cell);

/// Canonical 15-hex-digit lowercase string form, e.g. "8419699ffffffff".
std::string cell_to_string(CellIndex cell);

/// Parse the canonical string form; nullopt if malformed or not a valid cell.
std::optional<CellIndex> cell_from_string(const std::string& text);

}  // namespace gear::geo

#endif  // GEAR_GEO_H3_INDEX_HPP
