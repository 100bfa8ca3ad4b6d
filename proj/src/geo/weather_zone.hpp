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

#ifndef GEAR_GEO_WEATHER_ZONE_HPP
#define GEAR_GEO_WEATHER_ZONE_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "geo/h3_index.hpp"

namespace gear::geo {

/// Weather-zone resolution: coarse enough that a cell covers a whole city
/// region and its surroundings.
inline constexpr int kWeatherZoneResolution = 4;

/// What leaves the home: a coarse grid cell and the timezone, nothing else.
struct WeatherZoneResult {
    std::string cell_id;  // canonical 15-hex-digit form, resolution 4
    std::string tz;
};

enum class WeatherZoneError {
    kNone,
    kInvalidCoordinates,
    kInvalidSigma,
    kUnknownTimezone,
};

struct WeatherZoneOutcome {
    std::optional<WeatherZoneResult> result;
    WeatherZoneError error = WeatherZoneError::kNone;
    bool ok() const { return result.has_value(); }
};

/// Assign the home to a weather zone. A displacement drawn from an
/// axis-independent 2-D Gaussian with standard deviation `sigma_meters`
/// perturbs the coordinate before cell assignment, so the reported cell
/// does not pin down the exact point even near a cell edge. The raw
/// coordinate never appears in the result.
WeatherZoneOutcome assign_weather_zone(double lat_deg, double lng_deg, double sigma_meters,
                                       const std::string& tz, std::mt19937_64& rng);

/// Centroid of a resolution-4 cell given in canonical string form; used
/// server side as the interpolation anchor. Nullopt for a malformed id or
/// one of the wrong resolution.
std::optional<LatLngDeg> cell_center(const std::string& cell_id);

}  // namespace gear::geo

#endif  // GEAR_GEO_WEATHER_ZONE_HPP
