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

#ifndef GEAR_PROTO_SMART_METER_HPP
#define GEAR_PROTO_SMART_METER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/types.hpp"
#include "proto/p1_telegram.hpp"

namespace gear::proto {

/// OBIS reference -> property mapping used by telegram extraction. The
/// default table follows the Dutch register convention (tariff 1 = low,
/// tariff 2 = high/normal); a deployment can override it from a file with
/// the same layout as data/obis_map.csv. See docs/format_notes.md for the
/// standards the defaults are taken from.
class ObisMap {
   public:
    static const ObisMap& dutch_default();

    /// Load an override table; format: one "reference,property" pair per
    /// line, '#' comments allowed. Returns nullopt + error text on failure.
    static std::optional<ObisMap> load(const std::string& path, std::string& error);

    /// Property name for an electricity register reference, if mapped.
    std::optional<std::string> property_for(const std::string& reference) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

   private:
    std::map<std::string, std::string> entries_;
};

/// The measurements one telegram yields. Gas readings carry the gas
/// register's own timestamp; everything else carries the telegram
/// timestamp. A register absent from the telegram is simply absent here.
struct SmartMeterReading {
    std::vector<core::Measurement> measurements;
    core::UnixSeconds telegram_time = 0;
    std::vector<std::string> issues;  // non-fatal anomalies, for diagnostics
};

struct ReadingContext {
    std::string timezone = "Europe/Amsterdam";
    /// Unix time of the previous telegram, used to disambiguate flagless
    /// stamps in the repeated autumn hour.
    std::optional<core::UnixSeconds> prev_telegram_time;
    /// Receive time fallback for telegrams without a clock object
    /// (DSMR 3.0 meters do not emit 0-0:1.0.0).
    std::optional<core::UnixSeconds> receive_time;
    const ObisMap* obis_map = nullptr;  // defaults to the Dutch table
};

struct ReadingResult {
    std::optional<SmartMeterReading> reading;
    std::string error;
    bool ok() const { return reading.has_value(); }
};

/// Extract the smart-meter property measurements from a parsed telegram.
ReadingResult telegram_to_reading(const P1Telegram& telegram, const ReadingContext& ctx);

}  // namespace gear::proto

#endif  // GEAR_PROTO_SMART_METER_HPP
