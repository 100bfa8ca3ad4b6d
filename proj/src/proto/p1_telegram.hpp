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

#ifndef GEAR_PROTO_P1_TELEGRAM_HPP
#define GEAR_PROTO_P1_TELEGRAM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gear::proto {

/// One value group of an OBIS data line: the text between parentheses,
/// split at '*' into value and unit when a unit is present.
struct ObisValue {
    std::string text;
    std::string unit;  // empty when the group carries no unit

    friend bool operator==(const ObisValue&, const ObisValue&) = default;
};

/// One data object: OBIS reference (A-B:C.D.E) plus its value groups.
/// Continuation lines (bare value groups, as used by the DSMR 3.0 gas
/// object) are appended to the preceding object's groups.
struct ObisObject {
    std::string reference;
    std::vector<ObisValue> values;
    int line = 0;  // 1-based line number in the telegram

    friend bool operator==(const ObisObject&, const ObisObject&) = default;
};

struct P1Telegram {
    std::string header;  // identification line without the leading '/'
    std::vector<ObisObject> objects;
    std::optional<std::uint16_t> crc;  // trailer value, present on DSMR >= 4.0

    const ObisObject* find(const std::string& reference) const;
};

struct P1ParseError {
    int line = 0;
    std::string message;
};

struct P1ParseResult {
    std::optional<P1Telegram> telegram;
    P1ParseError error;
    bool ok() const { return telegram.has_value(); }
};

/// Parse one complete telegram, from the '/' identification line to the '!'
/// end marker (plus optional CRC trailer). CRLF and bare-LF line endings are
/// both accepted.
P1ParseResult parse_p1_telegram(const std::string& text);

struct CrcVerdict {
    enum Kind { kOk, kMismatch, kAbsent } kind = kAbsent;
    std::uint16_t expected = 0;  // computed over the byte range
    std::uint16_t found = 0;     // trailer value
};

/// Check the CRC trailer over the raw byte stream: CRC16 from '/' through
/// '!' inclusive, compared against the 4-hex-digit trailer. Telegrams
/// without a trailer (DSMR 3.0) yield kAbsent.
CrcVerdict verify_telegram_crc(const std::string& raw);

}  // namespace gear::proto

#endif  // GEAR_PROTO_P1_TELEGRAM_HPP
