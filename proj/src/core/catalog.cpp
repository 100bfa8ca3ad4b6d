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

#include "core/catalog.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace gear::core {

namespace {

constexpr Seconds kTenMinutes = 600;
constexpr Seconds kFiveMinutes = 300;
constexpr Seconds kThirtySeconds = 30;
constexpr Seconds kTenSeconds = 10;

PropertyDescriptor prop(const char* name, const char* unit, ValueFormat f, Seconds interval) {
    return PropertyDescriptor{name, unit, f, interval};
}

std::vector<PropertyDescriptor> opentherm_rows() {
    return {
        prop("isBoilerFlameOn", "bool", ValueFormat::kSigned, kThirtySeconds),
        prop("isCentralHeatingModeOn", "bool", ValueFormat::kSigned, kThirtySeconds),
        prop("isDomesticHotWaterModeOn", "bool", ValueFormat::kSigned, kThirtySeconds),
        prop("maxModulationLevel", "%", ValueFormat::kSigned, kThirtySeconds),
        prop("maxBoilerCap", "kW", ValueFormat::kSigned, kThirtySeconds),
        prop("minModulationLevel", "%", ValueFormat::kSigned, kThirtySeconds),
        prop("relativeModulationLevel", "%", ValueFormat::kSigned, kThirtySeconds),
        prop("boilerSupplyTemp", "°C", ValueFormat::kFixed2, kTenSeconds),
        prop("boilerReturnTemp", "°C", ValueFormat::kFixed2, kTenSeconds),
        prop("roomSetpointTemp", "°C", ValueFormat::kFixed2, kFiveMinutes),
        prop("roomTemp", "°C", ValueFormat::kFixed2, kFiveMinutes),
        prop("boilerMaxSupplyTemp", "°C", ValueFormat::kFixed2, kFiveMinutes),
    };
}

std::vector<PropertyDescriptor> pipe_clamp_rows() {
    return {
        prop("boilerTemp1", "°C", ValueFormat::kFixed1, kTenSeconds),
        prop("boilerTemp2", "°C", ValueFormat::kFixed1, kTenSeconds),
    };
}

std::vector<DataSourceType> build_sources() {
    std::vector<DataSourceType> s;

    s.push_back({SourceVariant::kDeviceType,
                 "living-room-module",
                 {
                     prop("heartbeat__0", "[-]", ValueFormat::kUnsigned, kTenMinutes),
                     prop("co2__ppm", "ppm", ValueFormat::kUnsigned, kTenMinutes),
                     prop("temp_indoor__degC", "°C", ValueFormat::kFixed1, kTenMinutes),
                     prop("rel_humidity__0", "[-]", ValueFormat::kFixed1, kTenMinutes),
                     prop("onboarded__p", "persons", ValueFormat::kUnsigned, kTenMinutes),
                     prop("occupancy__p", "persons", ValueFormat::kUnsigned, kTenMinutes),
                 },
                 kDefaultUploadInterval});

    s.push_back({SourceVariant::kDeviceType,
                 "smart-meter-module",
                 {
                     prop("heartbeat__0", "[-]", ValueFormat::kUnsigned, kTenMinutes),
                     prop("e_use_hi_cum__kWh", "kWh", ValueFormat::kFixed3, kTenMinutes),
                     prop("e_use_lo_cum__kWh", "kWh", ValueFormat::kFixed3, kTenMinutes),
                     prop("e_ret_hi_cum__kWh", "kWh", ValueFormat::kFixed3, kTenMinutes),
                     prop("e_ret_lo_cum__kWh", "kWh", ValueFormat::kFixed3, kTenMinutes),
                     prop("g_use_cum__m3", "m3", ValueFormat::kFixed3, kTenMinutes),
                     prop("meter_code_str", "n/a", ValueFormat::kString, kTenMinutes),
                     prop("dsmr_version__0", "[-]", ValueFormat::kFixed1, kTenMinutes),
                 },
                 kDefaultUploadInterval});

    s.push_back({SourceVariant::kDeviceType, "opentherm-monitor", opentherm_rows(),
                 kDefaultUploadInterval});

    s.push_back({SourceVariant::kDeviceType, "boiler-monitor-satellite", pipe_clamp_rows(),
                 kDefaultUploadInterval});

    s.push_back({SourceVariant::kDeviceType,
                 "room-monitor-satellite",
                 {
                     prop("CO2concentration", "ppm", ValueFormat::kSigned, kFiveMinutes),
                     prop("roomTempCO2", "°C", ValueFormat::kFixed1, kFiveMinutes),
                     prop("humidity", "%", ValueFormat::kFixed1, kFiveMinutes),
                     prop("roomTemp", "°C", ValueFormat::kFixed1, kFiveMinutes),
                 },
                 kDefaultUploadInterval});

    // combined OpenTherm + pipe-clamp variant; reuses the rows above
    {
        DataSourceType integrated{SourceVariant::kDeviceType, "integrated-boiler-monitor",
                                  opentherm_rows(), kDefaultUploadInterval};
        for (auto& p : pipe_clamp_rows()) integrated.properties.push_back(p);
        s.push_back(std::move(integrated));
    }

    s.push_back({SourceVariant::kEnergyQuery,
                 "weather-zone-query",
                 {
                     prop("weather_zone_cell_id_str", "n/a", ValueFormat::kString, 1),
                     prop("weather_zone_timezone_str", "n/a", ValueFormat::kString, 1),
                 },
                 0});

    s.push_back({SourceVariant::kCloudFeed, "enelogic-stub", {}, 0});

    return s;
}

}  // namespace

const PropertyDescriptor* DataSourceType::find_property(const std::string& name) const {
    for (const auto& p : properties) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

const Catalog& Catalog::shipped() {
    static const Catalog catalog = [] {
        Catalog c;
        c.sources_ = build_sources();
        return c;
    }();
    return catalog;
}

const DataSourceType* Catalog::find(const std::string& type_name) const {
    for (const auto& s : sources_) {
        if (s.type_name == type_name) return &s;
    }
    return nullptr;
}

std::vector<PropertyDescriptor> Catalog::distinct_property_rows() const {
    std::vector<PropertyDescriptor> rows;
    std::set<std::tuple<std::string, std::string, int, Seconds>> seen;
    for (const auto& s : sources_) {
        // the integrated variant reuses rows of the standalone devices
        if (s.type_name == "integrated-boiler-monitor") continue;
        if (s.variant != SourceVariant::kDeviceType) continue;
        for (const auto& p : s.properties) {
            auto key = std::make_tuple(p.name, p.unit, static_cast<int>(p.value_format),
                                       p.default_interval);
            if (seen.insert(key).second) rows.push_back(p);
        }
    }
    return rows;
}

const PropertyDescriptor* Catalog::find_property(const std::string& name) const {
    for (const auto& s : sources_) {
        if (const auto* p = s.find_property(name)) return p;
    }
    return nullptr;
}

}  // namespace gear::core
