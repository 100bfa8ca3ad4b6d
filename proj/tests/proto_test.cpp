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

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "proto/crc16.hpp"
#include "proto/dsmr_time.hpp"
#include "proto/opentherm.hpp"
#include "proto/p1_telegram.hpp"
#include "proto/smart_meter.hpp"

using namespace gear::proto;
using gear::core::Measurement;
using gear::core::UnixSeconds;

#ifndef TEST_DATA_DIR
#define TEST_DATA_DIR "tests/data"
#endif

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

// ---------------- CRC16 ----------------

TEST_CASE("crc16 matches the published check value") {
    // CRC-16/ARC check input
    CHECK(crc16("123456789") == 0xBB3D);
    CHECK(crc16("") == 0x0000);
}

TEST_CASE("telegram crc verdicts") {
    std::string body = "/HDR5TEST\r\n\r\n1-0:1.8.1(000001.000*kWh)\r\n!";
    char trailer[8];
    std::snprintf(trailer, sizeof trailer, "%04X", crc16(body));
    const std::string ok_telegram = body + trailer + "\r\n";

    CHECK(verify_telegram_crc(ok_telegram).kind == CrcVerdict::kOk);

    std::string corrupted = ok_telegram;
    corrupted[20] ^= 0x01;  // flip one payload bit
    const auto verdict = verify_telegram_crc(corrupted);
    CHECK(verdict.kind == CrcVerdict::kMismatch);
    CHECK(verdict.expected != verdict.found);

    CHECK(verify_telegram_crc("/HDR3TEST\r\n\r\n!\r\n").kind == CrcVerdict::kAbsent);
}

// ---------------- P1 parser ----------------

TEST_CASE("p1 parser: minimal telegram has zero objects") {
    const auto r = parse_p1_telegram("/ISK5\\2M550T-1012\r\n\r\n!\r\n");
    REQUIRE(r.ok());
    CHECK(r.telegram->header == "ISK5\\2M550T-1012");
    CHECK(r.telegram->objects.empty());
    CHECK(!r.telegram->crc.has_value());
}

TEST_CASE("p1 parser: object extraction preserves text and unit") {
    const auto r = parse_p1_telegram("/HDR\r\n\r\n1-0:1.8.1(012345.678*kWh)\r\n!\r\n");
    REQUIRE(r.ok());
    REQUIRE(r.telegram->objects.size() == 1);
    const auto& obj = r.telegram->objects[0];
    CHECK(obj.reference == "1-0:1.8.1");
    REQUIRE(obj.values.size() == 1);
    CHECK(obj.values[0].text == "012345.678");
    CHECK(obj.values[0].unit == "kWh");
}

TEST_CASE("p1 parser: garbled line reported with its line number") {
    const auto r = parse_p1_telegram("/HDR\r\n\r\n1-0:1.8.1(1*kWh)\r\n1-0:1.8(\r\n!\r\n");
    REQUIRE(!r.ok());
    CHECK(r.error.line == 4);
}

TEST_CASE("p1 parser: missing markers") {
    CHECK(!parse_p1_telegram("").ok());
    CHECK(!parse_p1_telegram("1-0:1.8.1(1*kWh)\r\n!\r\n").ok());
    CHECK(!parse_p1_telegram("/HDR\r\n\r\n1-0:1.8.1(1*kWh)\r\n").ok());
}

TEST_CASE("p1 parser: fuzz never crashes") {
    std::mt19937_64 rng(424242);
    const std::string seed = read_file(std::string(TEST_DATA_DIR) + "/telegrams/dsmr50_01.telegram");
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<std::size_t> pos(0, seed.size() - 1);
    for (int n = 0; n < 10'000; ++n) {
        std::string input;
        if (n % 2 == 0) {
            // arbitrary bytes
            const std::size_t len = rng() % 200;
            for (std::size_t i = 0; i < len; ++i)
                input.push_back(static_cast<char>(byte(rng)));
        } else {
            // mutated telegram
            input = seed;
            for (int m = 0; m < 8; ++m) input[pos(rng)] = static_cast<char>(byte(rng));
        }
        const auto r = parse_p1_telegram(input);
        (void)r;
        (void)verify_telegram_crc(input);
    }
}

// ---------------- DSMR timestamps ----------------

namespace {
DsmrTimestamp ts(int y, int mo, int d, int h, int mi, int s,
                 DsmrTimestamp::Flag f = DsmrTimestamp::Flag::kNone) {
    return DsmrTimestamp{y, mo, d, h, mi, s, f};
}
}  // namespace

TEST_CASE("dsmr timestamps: daylight flags fix the offset") {
    // 2024-10-27 02:30 local: the repeated autumn hour in Europe/Amsterdam
    auto summer = dsmr_timestamp_to_unix(
        ts(2024, 10, 27, 2, 30, 0, DsmrTimestamp::Flag::kSummer), "Europe/Amsterdam", {});
    REQUIRE(summer.ok());
    CHECK(summer.time == 1729989000);  // 2024-10-27T00:30:00Z

    auto winter = dsmr_timestamp_to_unix(
        ts(2024, 10, 27, 2, 30, 0, DsmrTimestamp::Flag::kWinter), "Europe/Amsterdam", {});
    REQUIRE(winter.ok());
    CHECK(winter.time == 1729992600);  // 2024-10-27T01:30:00Z
}

TEST_CASE("dsmr timestamps: flagless ambiguous hour uses prev_time") {
    const UnixSeconds first_pass_0250 = 1729990200;  // 02:50 CEST
    auto r = dsmr_timestamp_to_unix(ts(2024, 10, 27, 2, 30, 0), "Europe/Amsterdam",
                                    first_pass_0250);
    REQUIRE(r.ok());
    CHECK(r.time == 1729992600);  // resolved into the second pass (CET)

    // without prev_time the earlier candidate wins
    auto first = dsmr_timestamp_to_unix(ts(2024, 10, 27, 2, 30, 0), "Europe/Amsterdam", {});
    REQUIRE(first.ok());
    CHECK(first.time == 1729989000);
}

TEST_CASE("dsmr timestamps: spring-forward gap is an error") {
    auto r = dsmr_timestamp_to_unix(ts(2024, 3, 31, 2, 30, 0), "Europe/Amsterdam", {});
    CHECK(r.error == TimeError::kNonexistentLocalTime);
    // flags cannot rescue a nonexistent local time
    auto s = dsmr_timestamp_to_unix(ts(2024, 3, 31, 2, 30, 0, DsmrTimestamp::Flag::kSummer),
                                    "Europe/Amsterdam", {});
    CHECK(s.error == TimeError::kInconsistentFlag);
}

TEST_CASE("dsmr timestamps: inconsistent flag outside the period") {
    auto r = dsmr_timestamp_to_unix(ts(2024, 1, 10, 12, 0, 0, DsmrTimestamp::Flag::kSummer),
                                    "Europe/Amsterdam", {});
    CHECK(r.error == TimeError::kInconsistentFlag);
}

TEST_CASE("dsmr timestamps: unknown zone and invalid dates") {
    CHECK(dsmr_timestamp_to_unix(ts(2024, 1, 1, 0, 0, 0), "Mars/Olympus", {}).error ==
          TimeError::kUnknownTimezone);
    CHECK(dsmr_timestamp_to_unix(ts(2024, 2, 30, 0, 0, 0), "Europe/Amsterdam", {}).error ==
          TimeError::kInvalidCalendarDate);
}

TEST_CASE("dsmr timestamps: flagged round-trip across the transition week") {
    // every 10 minutes across 2024-10-24 .. 2024-10-30
    for (UnixSeconds t = 1729728000; t < 1730246400; t += 600) {
        const auto local = unix_to_dsmr_timestamp(t, "Europe/Amsterdam", true);
        REQUIRE(local.has_value());
        const auto back = dsmr_timestamp_to_unix(*local, "Europe/Amsterdam", {});
        REQUIRE(back.ok());
        CHECK(back.time == t);
    }
}

TEST_CASE("dsmr timestamps: flagless 10-minute stream is strictly increasing") {
    std::optional<UnixSeconds> prev;
    for (UnixSeconds t = 1729980000; t <= 1730000000; t += 600) {
        const auto local = unix_to_dsmr_timestamp(t, "Europe/Amsterdam", false);
        REQUIRE(local.has_value());
        const auto back = dsmr_timestamp_to_unix(*local, "Europe/Amsterdam", prev);
        REQUIRE(back.ok());
        if (prev) CHECK(back.time > *prev);
        CHECK(back.time == t);  // chaining recovers the original instants
        prev = back.time;
    }
}

// ---------------- smart meter extraction ----------------

TEST_CASE("golden telegram corpus extracts byte-exact values") {
    const std::string dir = std::string(TEST_DATA_DIR) + "/telegrams";
    const char* names[] = {
        "dsmr50_01", "dsmr50_02", "dsmr50_03", "dsmr50_04", "dsmr50_05",
        "dsmr4x_01", "dsmr4x_02", "dsmr4x_03", "dsmr4x_04", "dsmr4x_05",
        "dsmr30_01", "dsmr30_02", "dsmr30_03", "dsmr30_04", "dsmr30_05",
    };
    for (const char* name : names) {
        INFO(name);
        const std::string raw = read_file(dir + "/" + name + ".telegram");
        const std::string expected = read_file(dir + "/" + name + ".expected");

        std::string want_header, want_crc;
        std::optional<UnixSeconds> receive_time, prev_time;
        std::vector<Measurement> want;
        std::istringstream ss(expected);
        std::string line;
        while (std::getline(ss, line)) {
            std::istringstream ls(line);
            std::string kind;
            std::getline(ls, kind, '\t');
            if (kind == "header") {
                std::getline(ls, want_header);
            } else if (kind == "crc") {
                std::getline(ls, want_crc);
            } else if (kind == "receive_time") {
                std::string v;
                std::getline(ls, v);
                receive_time = std::stoll(v);
            } else if (kind == "prev_telegram_time") {
                std::string v;
                std::getline(ls, v);
                prev_time = std::stoll(v);
            } else if (kind == "measurement") {
                Measurement m;
                std::string t;
                std::getline(ls, m.property, '\t');
                std::getline(ls, t, '\t');
                std::getline(ls, m.value);
                m.time = std::stoll(t);
                want.push_back(std::move(m));
            }
        }

        const auto verdict = verify_telegram_crc(raw);
        if (want_crc == "ok") CHECK(verdict.kind == CrcVerdict::kOk);
        if (want_crc == "absent") CHECK(verdict.kind == CrcVerdict::kAbsent);

        const auto parsed = parse_p1_telegram(raw);
        REQUIRE(parsed.ok());
        CHECK(parsed.telegram->header == want_header);

        ReadingContext ctx;
        ctx.receive_time = receive_time;
        ctx.prev_telegram_time = prev_time;
        const auto reading = telegram_to_reading(*parsed.telegram, ctx);
        REQUIRE_MESSAGE(reading.ok(), reading.error);
        CHECK(reading.reading->issues.empty());

        auto got = reading.reading->measurements;
        auto key = [](const Measurement& m) { return std::tie(m.property, m.time, m.value); };
        std::sort(got.begin(), got.end(),
                  [&](const Measurement& a, const Measurement& b) { return key(a) < key(b); });
        std::sort(want.begin(), want.end(),
                  [&](const Measurement& a, const Measurement& b) { return key(a) < key(b); });
        CHECK(got == want);
    }
}

TEST_CASE("telegram without gas register yields no gas measurement") {
    const auto raw = read_file(std::string(TEST_DATA_DIR) + "/telegrams/dsmr50_05.telegram");
    const auto parsed = parse_p1_telegram(raw);
    REQUIRE(parsed.ok());
    const auto reading = telegram_to_reading(*parsed.telegram, {});
    REQUIRE(reading.ok());
    for (const auto& m : reading.reading->measurements) CHECK(m.property != "g_use_cum__m3");
    CHECK(reading.reading->measurements.size() == 6);  // 4 registers + code + version
}

TEST_CASE("hourly gas stamps repeat until the register advances") {
    // replay of a DSMR 3.0 sequence: two samples in the same hour carry the
    // same register timestamp, one in the next hour advances it
    const std::string dir = std::string(TEST_DATA_DIR) + "/telegrams";
    const auto r1 = parse_p1_telegram(read_file(dir + "/dsmr30_01.telegram"));
    const auto r2 = parse_p1_telegram(read_file(dir + "/dsmr30_02.telegram"));
    REQUIRE(r1.ok());
    REQUIRE(r2.ok());

    ReadingContext c1;
    c1.receive_time = 1729973400;
    ReadingContext c2;
    c2.receive_time = 1729974000;
    c2.prev_telegram_time = 1729973400;
    const auto m1 = telegram_to_reading(*r1.telegram, c1);
    const auto m2 = telegram_to_reading(*r2.telegram, c2);
    REQUIRE(m1.ok());
    REQUIRE(m2.ok());
    auto gas_time = [](const SmartMeterReading& r) {
        for (const auto& m : r.measurements)
            if (m.property == "g_use_cum__m3") return m.time;
        return UnixSeconds{-1};
    };
    CHECK(gas_time(*m1.reading) == gas_time(*m2.reading));
}

// ---------------- OpenTherm ----------------

TEST_CASE("opentherm frame decode basics") {
    const auto zero = decode_opentherm_frame(0);
    REQUIRE(zero.has_value());
    CHECK(zero->msg_type == OtMsgType::kReadData);
    CHECK(zero->data_id == 0);
    CHECK(zero->data_value == 0);

    // READ-ACK of data-id 25 with value 0x1480: supply temperature 20.50
    OpenThermFrame f{OtMsgType::kReadAck, 0, 25, 0x1480};
    const auto word = encode_opentherm_frame(f);
    const auto back = decode_opentherm_frame(word);
    REQUIRE(back.has_value());
    CHECK(*back == f);
    CHECK(decode_f88(back->data_value) == doctest::Approx(20.5));

    // any single bit flip breaks parity
    for (int bit = 0; bit < 32; ++bit) {
        CHECK(!decode_opentherm_frame(word ^ (1u << bit)).has_value());
    }
}

TEST_CASE("f8.8 matches the signed/256 oracle on all inputs") {
    for (int v = 0; v < 65536; ++v) {
        const double want = static_cast<double>(static_cast<std::int16_t>(v)) / 256.0;
        CHECK(decode_f88(static_cast<std::uint16_t>(v)) == want);
    }
    CHECK(decode_f88(0x0000) == 0.0);
    CHECK(decode_f88(0x1480) == 20.50);
    CHECK(decode_f88(0xFF80) == -0.50);
}

TEST_CASE("f8.8 is odd around zero at representable points") {
    std::mt19937_64 rng(7);
    for (int n = 0; n < 2000; ++n) {
        const auto v = static_cast<std::uint16_t>(rng());
        const double d = decode_f88(v);
        if (d == 0.0 || d <= -128.0 || d >= 128.0) continue;
        const auto neg = static_cast<std::uint16_t>(-static_cast<std::int16_t>(v));
        CHECK(decode_f88(neg) == -d);
    }
}

TEST_CASE("encode(decode(word)) round-trips parity-valid words") {
    std::mt19937_64 rng(99);
    int checked = 0;
    while (checked < 10'000) {
        std::uint32_t word = static_cast<std::uint32_t>(rng());
        if (std::popcount(word) % 2 != 0) word ^= 0x80000000u;
        const auto f = decode_opentherm_frame(word);
        REQUIRE(f.has_value());
        CHECK(encode_opentherm_frame(*f) == word);
        ++checked;
    }
}

namespace {
std::uint32_t ack(std::uint8_t id, std::uint16_t value) {
    return encode_opentherm_frame({OtMsgType::kReadAck, 0, id, value});
}
}  // namespace

TEST_CASE("frame sampler expands status replies into the three modes") {
    FrameSampler sampler;
    // slave status: CH active (bit 1) + flame on (bit 3)
    const auto out = sampler.feed({1000, ack(0, 0x0A)});
    REQUIRE(out.size() == 3);
    auto value_of = [&](const std::string& p) -> std::string {
        for (const auto& m : out)
            if (m.property == p) return m.value;
        return "?";
    };
    CHECK(value_of("isCentralHeatingModeOn") == "1");
    CHECK(value_of("isBoilerFlameOn") == "1");
    CHECK(value_of("isDomesticHotWaterModeOn") == "0");
    for (const auto& m : out) CHECK(m.time == 1000);
}

TEST_CASE("frame sampler: one measurement per interval slot") {
    FrameSampler sampler;
    // two roomTemp replies 4 minutes apart -> one measurement (5-min slot)
    auto first = sampler.feed({5000, ack(24, encode_f88(20.5))});
    REQUIRE(first.size() == 1);
    CHECK(first[0].property == "roomTemp");
    CHECK(first[0].time == 5000);
    CHECK(first[0].value == "20.50");
    CHECK(sampler.feed({5000 + 240, ack(24, encode_f88(20.7))}).empty());
    // the next slot admits again
    CHECK(sampler.feed({5000 + 301, ack(24, encode_f88(20.9))}).size() == 1);
}

TEST_CASE("frame sampler: supply temperature at its 10-second interval") {
    FrameSampler sampler;
    int emitted = 0;
    for (int s = 0; s < 60; s += 2) {  // frames every 2 s for one minute
        emitted += static_cast<int>(sampler.feed({s, ack(25, encode_f88(55.0))}).size());
    }
    CHECK(emitted == 6);  // 10-second slots
}

TEST_CASE("frame sampler: unknown ids and request frames are skipped") {
    FrameSampler sampler;
    CHECK(sampler.feed({0, ack(99, 1)}).empty());
    CHECK(sampler.unknown_data_ids() == 1);
    const std::uint32_t request = encode_opentherm_frame({OtMsgType::kReadData, 0, 25, 0});
    CHECK(sampler.feed({0, request}).empty());
    CHECK(sampler.ignored_frames() == 1);
    CHECK(sampler.feed({0, 0x00000001u}).empty());  // parity violation
    CHECK(sampler.parity_errors() == 1);
}

TEST_CASE("frame sampler: capacity pair comes from one data id") {
    FrameSampler sampler;
    const auto out = sampler.feed({0, ack(15, (24 << 8) | 30)});
    REQUIRE(out.size() == 2);
    CHECK(out[0].property == "maxBoilerCap");
    CHECK(out[0].value == "24");
    CHECK(out[1].property == "minModulationLevel");
    CHECK(out[1].value == "30");
}
