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

#include "proto/dsmr_time.hpp"

#include <array>
#include <cctype>
#include <cstdio>

namespace gear::proto {

namespace {

using core::Seconds;
using core::UnixSeconds;

// Zones supported for telegram conversion. All continental entries follow
// the EU daylight rule (last Sunday of March 01:00 UTC to last Sunday of
// October 01:00 UTC), which has been in force since 1996 and covers the
// deployment region; exotic zones are not needed by any campaign so far.
struct ZoneRule {
    const char* name;
    Seconds std_offset;
    Seconds dst_offset;  // equal to std_offset when the zone has no DST
};

constexpr std::array<ZoneRule, 7> kZones = {{
    {"Europe/Amsterdam", 3600, 7200},
    {"Europe/Brussels", 3600, 7200},
    {"Europe/Berlin", 3600, 7200},
    {"Europe/Paris", 3600, 7200},
    {"Europe/Madrid", 3600, 7200},
    {"Europe/London", 0, 3600},
    {"UTC", 0, 0},
}};

const ZoneRule* find_zone(const std::string& name) {
    for (const auto& z : kZones) {
        if (name == z.name) return &z;
    }
    return nullptr;
}

// days since 1970-01-01 for a civil date (proleptic Gregorian)
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = static_cast<int>(yy + (m <= 2));
}

int days_in_month(int y, int m) {
    static const int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && ((y % 4 == 0 && y % 100 != 0) || y % 400 == 0)) return 29;
    return lengths[m - 1];
}

// 0 = Sunday
int weekday_of_days(std::int64_t days) {
    return static_cast<int>(((days % 7) + 11) % 7);  // 1970-01-01 was a Thursday
}

std::int64_t last_sunday_days(int year, int month) {
    int d = days_in_month(year, month);
    std::int64_t days = days_from_civil(year, month, d);
    return days - weekday_of_days(days);
}

// EU daylight period for a UTC instant's year: [last Sun March 01:00Z,
// last Sun October 01:00Z)
bool in_eu_dst(UnixSeconds utc) {
    std::int64_t days = utc / 86400;
    if (utc < 0 && utc % 86400 != 0) --days;
    int y, m, d;
    civil_from_days(days, y, m, d);
    const UnixSeconds start = last_sunday_days(y, 3) * 86400 + 3600;
    const UnixSeconds end = last_sunday_days(y, 10) * 86400 + 3600;
    return utc >= start && utc < end;
}

Seconds offset_at(const ZoneRule& z, UnixSeconds utc) {
    if (z.dst_offset == z.std_offset) return z.std_offset;
    return in_eu_dst(utc) ? z.dst_offset : z.std_offset;
}

bool calendar_valid(const DsmrTimestamp& ts) {
    if (ts.month < 1 || ts.month > 12) return false;
    if (ts.day < 1 || ts.day > days_in_month(ts.year, ts.month)) return false;
    if (ts.hour < 0 || ts.hour > 23) return false;
    if (ts.minute < 0 || ts.minute > 59) return false;
    if (ts.second < 0 || ts.second > 59) return false;
    return true;
}

UnixSeconds local_field_seconds(const DsmrTimestamp& ts) {
    return days_from_civil(ts.year, ts.month, ts.day) * 86400 + ts.hour * 3600 +
           ts.minute * 60 + ts.second;
}

}  // namespace

std::optional<DsmrTimestamp> parse_dsmr_timestamp(const std::string& text) {
    if (text.size() != 12 && text.size() != 13) return std::nullopt;
    for (int i = 0; i < 12; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    }
    auto two = [&](int i) { return (text[i] - '0') * 10 + (text[i + 1] - '0'); };
    DsmrTimestamp ts;
    ts.year = 2000 + two(0);
    ts.month = two(2);
    ts.day = two(4);
    ts.hour = two(6);
    ts.minute = two(8);
    ts.second = two(10);
    if (text.size() == 13) {
        if (text[12] == 'S')
            ts.flag = DsmrTimestamp::Flag::kSummer;
        else if (text[12] == 'W')
            ts.flag = DsmrTimestamp::Flag::kWinter;
        else
            return std::nullopt;
    }
    if (!calendar_valid(ts)) return std::nullopt;
    return ts;
}

std::string render_dsmr_timestamp(const DsmrTimestamp& ts) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d%02d%02d%02d%02d%02d", ts.year % 100, ts.month, ts.day,
                  ts.hour, ts.minute, ts.second);
    std::string out = buf;
    if (ts.flag == DsmrTimestamp::Flag::kSummer) out.push_back('S');
    if (ts.flag == DsmrTimestamp::Flag::kWinter) out.push_back('W');
    return out;
}

TimeResult dsmr_timestamp_to_unix(const DsmrTimestamp& ts, const std::string& timezone,
                                  std::optional<UnixSeconds> prev_time) {
    const ZoneRule* zone = find_zone(timezone);
    if (!zone) return {0, TimeError::kUnknownTimezone};
    if (!calendar_valid(ts)) return {0, TimeError::kInvalidCalendarDate};

    const UnixSeconds local = local_field_seconds(ts);

    if (ts.flag != DsmrTimestamp::Flag::kNone) {
        const Seconds offset =
            ts.flag == DsmrTimestamp::Flag::kSummer ? zone->dst_offset : zone->std_offset;
        const UnixSeconds utc = local - offset;
        if (offset_at(*zone, utc) != offset) return {0, TimeError::kInconsistentFlag};
        return {utc, TimeError::kNone};
    }

    // flagless: collect the candidate instants consistent with the zone
    UnixSeconds candidates[2];
    int n = 0;
    const UnixSeconds from_std = local - zone->std_offset;
    const UnixSeconds from_dst = local - zone->dst_offset;
    if (offset_at(*zone, from_dst) == zone->dst_offset) candidates[n++] = from_dst;
    if (zone->dst_offset != zone->std_offset && offset_at(*zone, from_std) == zone->std_offset)
        candidates[n++] = from_std;

    if (n == 0) return {0, TimeError::kNonexistentLocalTime};
    if (n == 1) return {candidates[0], TimeError::kNone};

    // ambiguous autumn hour; candidates[0] < candidates[1] (summer first)
    if (!prev_time) return {candidates[0], TimeError::kNone};
    for (int i = 0; i < n; ++i) {
        if (candidates[i] > *prev_time) return {candidates[i], TimeError::kNone};
    }
    return {candidates[n - 1], TimeError::kNone};
}

std::optional<DsmrTimestamp> unix_to_dsmr_timestamp(UnixSeconds time, const std::string& timezone,
                                                    bool with_flag) {
    const ZoneRule* zone = find_zone(timezone);
    if (!zone) return std::nullopt;
    const Seconds offset = offset_at(*zone, time);
    UnixSeconds local = time + offset;
    std::int64_t days = local / 86400;
    UnixSeconds rem = local % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    DsmrTimestamp ts;
    civil_from_days(days, ts.year, ts.month, ts.day);
    ts.hour = static_cast<int>(rem / 3600);
    ts.minute = static_cast<int>((rem / 60) % 60);
    ts.second = static_cast<int>(rem % 60);
    if (with_flag) {
        ts.flag = (zone->dst_offset != zone->std_offset && offset == zone->dst_offset)
                      ? DsmrTimestamp::Flag::kSummer
                      : DsmrTimestamp::Flag::kWinter;
    }
    return ts;
}

bool timezone_known(const std::string& name) { return find_zone(name) != nullptr; }

std::optional<Seconds> utc_offset_at(const std::string& timezone, UnixSeconds t) {
    const ZoneRule* zone = find_zone(timezone);
    if (!zone) return std::nullopt;
    return offset_at(*zone, t);
}

}  // namespace gear::proto
