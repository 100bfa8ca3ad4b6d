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

#ifndef GEAR_PROTO_DSMR_TIME_HPP
#define GEAR_PROTO_DSMR_TIME_HPP

#include <optional>
#include <string>

#include "core/types.hpp"

namespace gear::proto {

/// A meter-local timestamp as carried in a telegram: TST field
/// YYMMDDhhmmss with an S/W daylight flag on DSMR >= 4.0 and no flag on
/// DSMR 3.0 meters.
struct DsmrTimestamp {
    int year = 0;  // full year; the two-digit telegram field maps to 2000..2099
    int month = 0;
    int day = 0;
    int hour = 0;
    int minute = 0;
    int second = 0;
    enum class Flag { kNone, kSummer, kWinter } flag = Flag::kNone;
};

/// Parse a TST field ("101209113020W" or flagless "101209113020").
std::optional<DsmrTimestamp> parse_dsmr_timestamp(const std::string& text);

/// Render to the TST field text; with_flag selects the DSMR >= 4.0 form.
std::string render_dsmr_timestamp(const DsmrTimestamp& ts);

enum class TimeError {
    kNone,
    kUnknownTimezone,
    kInvalidCalendarDate,
    kNonexistentLocalTime,  // spring-forward gap; the meter never emits these
    kInconsistentFlag,      // e.g. S flag outside the summer period
};

struct TimeResult {
    core::UnixSeconds time = 0;
    TimeError error = TimeError::kNone;
    bool ok() const { return error == TimeError::kNone; }
};

/// Resolve a meter-local timestamp to Unix time.
///
/// With a daylight flag the UTC offset is fixed by the flag. Without one,
/// a time in the repeated autumn hour has two candidate instants: the
/// smallest candidate strictly greater than prev_time is chosen; with no
/// prev_time the earlier candidate is chosen; when neither candidate
/// exceeds prev_time the later one is returned (a repeated register stamp).
TimeResult dsmr_timestamp_to_unix(const DsmrTimestamp& ts, const std::string& timezone,
                                  std::optional<core::UnixSeconds> prev_time);

/// Local civil time for a Unix instant, with the daylight flag the zone is
/// in at that instant. Inverse of dsmr_timestamp_to_unix for flagged stamps.
std::optional<DsmrTimestamp> unix_to_dsmr_timestamp(core::UnixSeconds time,
                                                    const std::string& timezone, bool with_flag);

/// True when `name` is a supported tz-database zone name.
bool timezone_known(const std::string& name);

/// UTC offset of the zone at a given instant, seconds east.
std::optional<core::Seconds> utc_offset_at(const std::string& timezone, core::UnixSeconds t);

}  // namespace gear::proto

#endif  // GEAR_PROTO_DSMR_TIME_HPP
