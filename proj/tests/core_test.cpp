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

#include <random>
#include <set>

#include "core/catalog.hpp"
#include "core/property.hpp"

using namespace gear::core;

TEST_CASE("property name validation: convention names") {
    CHECK(validate_property_name("co2__ppm").kind == NameVerdict::kValid);
    CHECK(validate_property_name("e_use_hi_cum__kWh").kind == NameVerdict::kValid);
    CHECK(validate_property_name("heartbeat__0").kind == NameVerdict::kValid);
    CHECK(validate_property_name("temp_indoor__degC").kind == NameVerdict::kValid);
    CHECK(validate_property_name("g_use_cum__m3").kind == NameVerdict::kValid);
    CHECK(validate_property_name("occupancy__p").kind == NameVerdict::kValid);
}

TEST_CASE("property name validation: open unit vocabulary warns") {
    const auto v = validate_property_name("wind__ms");
    CHECK(v.kind == NameVerdict::kValid);
    CHECK(!v.warning.empty());
    CHECK(validate_property_name("co2__ppm").warning.empty());
}

TEST_CASE("property name validation: legacy names") {
    CHECK(validate_property_name("boilerSupplyTemp").kind == NameVerdict::kLegacy);
    CHECK(validate_property_name("meter_code_str").kind == NameVerdict::kLegacy);
    CHECK(validate_property_name("humidity").kind == NameVerdict::kLegacy);
    CHECK(validate_property_name("CO2concentration").kind == NameVerdict::kLegacy);
    CHECK(validate_property_name("boilerTemp1").kind == NameVerdict::kLegacy);
}

TEST_CASE("property name validation: rejections name the rule") {
    auto v = validate_property_name("temp indoor");
    CHECK(v.kind == NameVerdict::kInvalid);
    CHECK(v.reason == "no double-underscore separator between quantity and unit");

    CHECK(validate_property_name("").kind == NameVerdict::kInvalid);
    CHECK(validate_property_name("__ppm").kind == NameVerdict::kInvalid);
    CHECK(validate_property_name("co2__").kind == NameVerdict::kInvalid);
    CHECK(validate_property_name("Temp__degC").kind == NameVerdict::kInvalid);
    CHECK(validate_property_name("a__b__c").kind == NameVerdict::kInvalid);
    CHECK(validate_property_name("co2__pp m").kind == NameVerdict::kInvalid);
}

TEST_CASE("every catalog property row validates as valid or legacy") {
    for (const auto& source : Catalog::shipped().sources()) {
        for (const auto& p : source.properties) {
            const auto v = validate_property_name(p.name);
            INFO(p.name);
            CHECK(v.acceptable());
        }
    }
}

TEST_CASE("catalog has exactly 31 distinct property rows") {
    const auto rows = Catalog::shipped().distinct_property_rows();
    CHECK(rows.size() == 31);
    // the one shared row: heartbeat appears under two sources
    int heartbeat_rows = 0;
    for (const auto& r : rows)
        if (r.name == "heartbeat__0") ++heartbeat_rows;
    CHECK(heartbeat_rows == 1);
    // roomTemp appears twice with different formats (device generations)
    int room_temp_rows = 0;
    for (const auto& r : rows)
        if (r.name == "roomTemp") ++room_temp_rows;
    CHECK(room_temp_rows == 2);
}

TEST_CASE("render_value canonical forms") {
    CHECK(*render_value(ValueFormat::kFixed3, RawValue{12345.678}) == "12345.678");
    CHECK(*render_value(ValueFormat::kUnsigned, RawValue{std::int64_t{412}}) == "412");
    CHECK(*render_value(ValueFormat::kFixed1, RawValue{5.0}) == "5.0");
    CHECK(*render_value(ValueFormat::kFixed2, RawValue{20.5}) == "20.50");
    CHECK(*render_value(ValueFormat::kSigned, RawValue{std::int64_t{-3}}) == "-3");
    CHECK(*render_value(ValueFormat::kString, RawValue{std::string("abc")}) == "abc");

    CHECK(!render_value(ValueFormat::kUnsigned, RawValue{std::int64_t{-1}}).has_value());
    CHECK(!render_value(ValueFormat::kFixed1, RawValue{std::string("x")}).has_value());
    CHECK(!render_value(ValueFormat::kString, RawValue{1.0}).has_value());
}

TEST_CASE("parse_value accepts leading zeros and rejects junk") {
    auto v = parse_value(ValueFormat::kFixed3, "012345.678");
    REQUIRE(v.has_value());
    CHECK(std::get<double>(*v) == doctest::Approx(12345.678));
    CHECK(std::get<double>(*parse_value(ValueFormat::kFixed1, "20.5")) == doctest::Approx(20.5));
    CHECK(!parse_value(ValueFormat::kUnsigned, "abc").has_value());
    CHECK(!parse_value(ValueFormat::kUnsigned, "-1").has_value());
    CHECK(!parse_value(ValueFormat::kFixed1, "1e3").has_value());
    CHECK(!parse_value(ValueFormat::kFixed1, "").has_value());
    CHECK(!parse_value(ValueFormat::kFixed1, "..1").has_value());
}

TEST_CASE("render/parse round-trip over randomized pairs") {
    std::mt19937_64 rng(20260809);
    std::uniform_int_distribution<int> fmt_pick(0, 4);
    std::uniform_real_distribution<double> real(-1e6, 1e6);
    std::uniform_int_distribution<std::int64_t> integer(0, 1'000'000'000);
    for (int n = 0; n < 10'000; ++n) {
        const ValueFormat f = static_cast<ValueFormat>(fmt_pick(rng));
        RawValue raw;
        switch (f) {
            case ValueFormat::kUnsigned: raw = integer(rng); break;
            case ValueFormat::kSigned: raw = integer(rng) - 500'000'000; break;
            default: raw = real(rng); break;
        }
        const auto text = render_value(f, raw);
        REQUIRE(text.has_value());
        const auto back = parse_value(f, *text);
        REQUIRE(back.has_value());
        // round-trip at the format's precision: re-rendering is identity
        const auto text2 = render_value(f, *back);
        REQUIRE(text2.has_value());
        CHECK(*text2 == *text);
    }
}
