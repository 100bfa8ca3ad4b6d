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

#include "geo/weather_zone.hpp"

#include <cmath>

#include "proto/dsmr_time.hpp"

namespace gear::geo {

namespace {

constexpr double kPi = 3.14159265358979323846;
// local metric approximation; exact geodesy is irrelevant at the noise
// scales involved (a few km against ~25 km cells)
constexpr double kMetersPerDegLat = 111320.0;

}  // namespace

WeatherZoneOutcome assign_weather_zone(double lat_deg, double lng_deg, double sigma_meters,
                                       const std::string& tz, std::mt19937_64& rng) {
    WeatherZoneOutcome out;
    if (!std::isfinite(lat_deg) || !std::isfinite(lng_deg) || lat_deg < -90.0 ||
        lat_deg > 90.0 || lng_deg < -180.0 || lng_deg > 180.0) {
        out.error = WeatherZoneError::kInvalidCoordinates;
        return out;
    }
    if (!std::isfinite(sigma_meters) || sigma_meters < 0.0) {
        out.error = WeatherZoneError::kInvalidSigma;
        return out;
    }
    if (!proto::timezone_known(tz)) {
        out.error = WeatherZoneError::kUnknownTimezone;
        return out;
    }

    double lat = lat_deg;
    double lng = lng_deg;
    if (sigma_meters > 0.0) {
        std::normal_distribution<double> gauss(0.0, sigma_meters);
        const double north = gauss(rng);
        const double east = gauss(rng);
        lat += north / kMetersPerDegLat;
        const double scale = kMetersPerDegLat * std::cos(lat_deg * kPi / 180.0);
        if (scale > 1.0) lng += east / scale;
        if (lat > 90.0) lat = 90.0;
        if (lat < -90.0) lat = -90.0;
        while (lng > 180.0) lng -= 360.0;
        while (lng < -180.0) lng += 360.0;
    }

    const auto cell = cell_from_lat_lng({lat, lng}, kWeatherZoneResolution);
    if (!cell) {
        out.error = WeatherZoneError::kInvalidCoordinates;
        return out;
    }
    out.result = WeatherZoneResult{cell_to_string(*cell), tz};
    return out;
}

std::optional<LatLngDeg> cell_center(const std::string& cell_id) {
    const auto cell = cell_from_string(cell_id);
    if (!cell || cell_resolution(*cell) != kWeatherZoneResolution) return std::nullopt;
    return cell_to_lat_lng(*cell);
}

}  // namespace gear::geo
