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

#include "proto/smart_meter.hpp"

#include <fstream>

#include "core/catalog.hpp"
#include "core/property.hpp"
#include "proto/dsmr_time.hpp"

namespace gear::proto {

namespace {

using core::Measurement;
using core::RawValue;
using core::UnixSeconds;
using core::ValueFormat;

constexpr const char* kVersionRef = "1-3:0.2.8";
constexpr const char* kClockRef = "0-0:1.0.0";

// gas meters register hourly below DSMR 5.0 and every five minutes from 5.0
constexpr core::Seconds kGasPeriodPre50 = 3600;
constexpr core::Seconds kGasPeriod50 = 300;

ValueFormat format_of(const std::string& property) {
    const auto* desc = core::Catalog::shipped().find("smart-meter-module")->find_property(property);
    return desc ? desc->value_format : ValueFormat::kString;
}

// canonical rendering of a register field under the property's format
std::optional<std::string> canonical(const std::string& property, const std::string& text) {
    const ValueFormat f = format_of(property);
    const auto raw = core::parse_value(f, text);
    if (!raw) return std::nullopt;
    return core::render_value(f, *raw);
}

}  // namespace

const ObisMap& ObisMap::dutch_default() {
    static const ObisMap map = [] {
        ObisMap m;
        m.entries_ = {
            {"1-0:1.8.1", "e_use_lo_cum__kWh"},
            {"1-0:1.8.2", "e_use_hi_cum__kWh"},
            {"1-0:2.8.1", "e_ret_lo_cum__kWh"},
            {"1-0:2.8.2", "e_ret_hi_cum__kWh"},
        };
        return m;
    }();
    return map;
}

std::optional<ObisMap> ObisMap::load(const std::string& path, std::string& error) {
    std::ifstream in(path);
    if (!in) {
        error = "cannot open " + path;
        return std::nullopt;
    }
    ObisMap m;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            error = "line " + std::to_string(line_no) + ": expected 'reference,property'";
            return std::nullopt;
        }
        m.entries_[line.substr(0, comma)] = line.substr(comma + 1);
    }
    return m;
}

std::optional<std::string> ObisMap::property_for(const std::string& reference) const {
    const auto it = entries_.find(reference);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

ReadingResult telegram_to_reading(const P1Telegram& telegram, const ReadingContext& ctx) {
    ReadingResult result;
    if (!timezone_known(ctx.timezone)) {
        result.error = "unknown timezone '" + ctx.timezone + "'";
        return result;
    }
    const ObisMap& obis = ctx.obis_map ? *ctx.obis_map : ObisMap::dutch_default();
    SmartMeterReading reading;

    // dsmr version, which also fixes the gas registration period
    std::optional<double> version;
    if (const auto* v = telegram.find(kVersionRef); v && !v->values.empty()) {
        const auto raw = core::parse_value(ValueFormat::kUnsigned, v->values[0].text);
        if (raw) {
            version = static_cast<double>(std::get<std::int64_t>(*raw)) / 10.0;
        } else {
            reading.issues.push_back("unparseable version object '" + v->values[0].text + "'");
        }
    }

    // telegram timestamp; DSMR 3.0 has no clock object, the receive time
    // stands in
    if (const auto* clock = telegram.find(kClockRef); clock && !clock->values.empty()) {
        const auto ts = parse_dsmr_timestamp(clock->values[0].text);
        if (!ts) {
            result.error = "unparseable clock object '" + clock->values[0].text + "'";
            return result;
        }
        const auto t = dsmr_timestamp_to_unix(*ts, ctx.timezone, ctx.prev_telegram_time);
        if (!t.ok()) {
            result.error = "clock object does not resolve to a valid instant";
            return result;
        }
        reading.telegram_time = t.time;
    } else if (ctx.receive_time) {
        reading.telegram_time = *ctx.receive_time;
    } else {
        result.error = "telegram has no clock object and no receive time was given";
        return result;
    }

    auto emit = [&](const std::string& property, const std::string& text, UnixSeconds time) {
        const auto value = canonical(property, text);
        if (!value) {
            reading.issues.push_back("unparseable value '" + text + "' for " + property);
            return;
        }
        if (property != "meter_code_str" && !value->empty() && (*value)[0] == '-') {
            reading.issues.push_back("negative cumulative register for " + property);
            return;
        }
        reading.measurements.push_back(Measurement{property, time, *value});
    };

    // electricity registers
    for (const auto& obj : telegram.objects) {
        const auto property = obis.property_for(obj.reference);
        if (!property || obj.values.empty()) continue;
        emit(*property, obj.values[0].text, reading.telegram_time);
    }

    // gas register: 24.2.1 (TST)(value*m3) on DSMR >= 4.0, or the 24.3.0
    // two-line form on DSMR 3.0
    const core::Seconds gas_period =
        (version && *version >= 5.0) ? kGasPeriod50 : kGasPeriodPre50;
    for (const auto& obj : telegram.objects) {
        const bool modern = obj.reference.size() > 4 &&
                            obj.reference.compare(0, 2, "0-") == 0 &&
                            obj.reference.compare(obj.reference.size() - 7, 7, ":24.2.1") == 0;
        const bool legacy = obj.reference.size() > 4 &&
                            obj.reference.compare(0, 2, "0-") == 0 &&
                            obj.reference.compare(obj.reference.size() - 7, 7, ":24.3.0") == 0;
        if (!modern && !legacy) continue;
        const std::size_t value_index = modern ? 1 : 6;
        if (obj.values.size() <= value_index) {
            reading.issues.push_back("gas object " + obj.reference + " lacks a value group");
            break;
        }
        const auto ts = parse_dsmr_timestamp(obj.values[0].text);
        if (!ts) {
            reading.issues.push_back("unparseable gas timestamp '" + obj.values[0].text + "'");
            break;
        }
        // anchor flagless stamps to the current registration window: the
        // register time lies in (telegram_time - period, telegram_time]
        const auto t =
            dsmr_timestamp_to_unix(*ts, ctx.timezone, reading.telegram_time - gas_period);
        if (!t.ok()) {
            reading.issues.push_back("gas timestamp does not resolve to a valid instant");
            break;
        }
        emit("g_use_cum__m3", obj.values[value_index].text, t.time);
        break;
    }

    emit("meter_code_str", telegram.header, reading.telegram_time);
    if (version) {
        const auto text = core::render_value(ValueFormat::kFixed1, RawValue{*version});
        if (text)
            reading.measurements.push_back(
                Measurement{"dsmr_version__0", reading.telegram_time, *text});
    }

    result.reading = std::move(reading);
    return result;
}

}  // namespace gear::proto
