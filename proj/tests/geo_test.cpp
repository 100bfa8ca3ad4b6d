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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "geo/h3_index.hpp"
#include "geo/weather_zone.hpp"

using namespace gear::geo;

#ifndef TEST_DATA_DIR
#define TEST_DATA_DIR "tests/data"
#endif

TEST_CASE("cell indexing matches the reference vectors") {
    std::ifstream in(std::string(TEST_DATA_DIR) + "/latlng_to_cell.txt");
    REQUIRE(in.good());
    std::string line;
    int checked = 0;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        double lat, lng;
        int res;
        std::string want;
        ss >> lat >> lng >> res >> want;
        const auto cell = cell_from_lat_lng({lat, lng}, res);
        REQUIRE(cell.has_value());
        CHECK(cell_to_string(*cell) == want);
        ++checked;
    }
    CHECK(checked > 8000);
}

TEST_CASE("cell centroids match the reference vectors") {
    std::ifstream in(std::string(TEST_DATA_DIR) + "/cell_center.txt");
    REQUIRE(in.good());
    std::string line;
    int checked = 0;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string id;
        double lat, lng;
        ss >> id >> lat >> lng;
        const auto cell = cell_from_string(id);
        REQUIRE(cell.has_value());
        const auto center = cell_to_lat_lng(*cell);
        REQUIRE(center.has_value());
        CHECK(center->lat == doctest::Approx(lat).epsilon(1e-11));
        double dlng = std::fabs(center->lng - lng);
        if (dlng > 180.0) dlng = 360.0 - dlng;
        // longitude is ill-conditioned at the poles; compare at metric scale
        CHECK(dlng * std::cos(lat * M_PI / 180.0) < 1e-9);
        ++checked;
    }
    CHECK(checked > 7000);
}

TEST_CASE("res-0 cells and pentagon flags match the reference") {
    std::ifstream in(std::string(TEST_DATA_DIR) + "/res0_cells.txt");
    REQUIRE(in.good());
    std::string line;
    int count = 0, pentagons = 0;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string id;
        int pent;
        double lat, lng;
        ss >> id >> pent >> lat >> lng;
        const auto cell = cell_from_string(id);
        REQUIRE(cell.has_value());
        CHECK(is_pentagon(*cell) == (pent == 1));
        pentagons += pent;
        ++count;
    }
    CHECK(count == 122);
    CHECK(pentagons == 12);
}

TEST_CASE("string form round-trips and rejects malformed ids") {
    const auto cell = cell_from_lat_lng({52.5126, 6.0946}, 4);
    REQUIRE(cell.has_value());
    CHECK(cell_to_string(*cell) == "8419699ffffffff");
    CHECK(cell_from_string("8419699ffffffff") == *cell);

    CHECK(!cell_from_string("").has_value());
    CHECK(!cell_from_string("zzz").has_value());
    CHECK(!cell_from_string("ffffffffffffffff").has_value());
    CHECK(!cell_from_string("8419699fffffff0").has_value());  // digits after res
    CHECK(!cell_from_lat_lng({91.0, 0.0}, 4).has_value() ==
          false);  // out-of-range lat still normalizes onto the sphere
    CHECK(!cell_from_lat_lng({std::nan(""), 0.0}, 4).has_value());
    CHECK(!cell_from_lat_lng({0.0, 0.0}, 16).has_value());
}

TEST_CASE("weather zone: zero sigma is deterministic and exact") {
    std::mt19937_64 rng(1);
    const auto a = assign_weather_zone(52.5126, 6.0946, 0.0, "Europe/Amsterdam", rng);
    const auto b = assign_weather_zone(52.5126, 6.0946, 0.0, "Europe/Amsterdam", rng);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(a.result->cell_id == "8419699ffffffff");  // the cell covering central Zwolle
    CHECK(a.result->cell_id == b.result->cell_id);
    CHECK(a.result->tz == "Europe/Amsterdam");
}

TEST_CASE("weather zone: result carries only cell id and timezone") {
    std::mt19937_64 rng(2);
    const auto r = assign_weather_zone(52.5126, 6.0946, 3000.0, "Europe/Amsterdam", rng);
    REQUIRE(r.ok());
    // structural guarantee: the type has exactly these two fields
    const auto [cell_id, tz] = *r.result;
    CHECK(cell_id.size() == 15);
    CHECK(tz == "Europe/Amsterdam");
    const auto cell = cell_from_string(cell_id);
    REQUIRE(cell.has_value());
    CHECK(cell_resolution(*cell) == 4);
}

TEST_CASE("weather zone: input validation") {
    std::mt19937_64 rng(3);
    CHECK(assign_weather_zone(95.0, 0.0, 0.0, "Europe/Amsterdam", rng).error ==
          WeatherZoneError::kInvalidCoordinates);
    CHECK(assign_weather_zone(52.0, 6.0, -1.0, "Europe/Amsterdam", rng).error ==
          WeatherZoneError::kInvalidSigma);
    CHECK(assign_weather_zone(52.0, 6.0, 0.0, "Mars/Olympus", rng).error ==
          WeatherZoneError::kUnknownTimezone);
}

TEST_CASE("weather zone: noise concentrates on the true cell and neighbors") {
    std::mt19937_64 rng(20260809);
    // start from a cell center so the cell radius dominates 3 km noise
    const auto center = cell_center("8419699ffffffff");
    REQUIRE(center.has_value());

    auto displaced_fraction = [&](double sigma) {
        int moved = 0;
        const int draws = 4000;
        for (int n = 0; n < draws; ++n) {
            const auto r =
                assign_weather_zone(center->lat, center->lng, sigma, "Europe/Amsterdam", rng);
            REQUIRE(r.ok());
            if (r.result->cell_id != "8419699ffffffff") ++moved;
        }
        return static_cast<double>(moved) / draws;
    };

    const double at_3km = displaced_fraction(3000.0);
    const double at_30km = displaced_fraction(30000.0);
    CHECK(at_3km < 0.01);
    CHECK(at_30km > at_3km);
    CHECK(at_30km > 0.2);  // a 30 km sigma frequently crosses ~25 km cells
}

TEST_CASE("cell_center round-trips through indexing") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> lat(-85.0, 85.0);
    std::uniform_real_distribution<double> lng(-180.0, 180.0);
    for (int n = 0; n < 500; ++n) {
        const auto cell = cell_from_lat_lng({lat(rng), lng(rng)}, 4);
        REQUIRE(cell.has_value());
        const auto center = cell_center(cell_to_string(*cell));
        REQUIRE(center.has_value());
        const auto back = cell_from_lat_lng(*center, 4);
        REQUIRE(back.has_value());
        CHECK(*back == *cell);
    }
}

TEST_CASE("cell_center rejects malformed or wrong-resolution ids") {
    CHECK(!cell_center("nonsense").has_value());
    CHECK(!cell_center("8928308280fffff").has_value());  // resolution 9
}
