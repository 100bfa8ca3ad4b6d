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

#include "proto/p1_telegram.hpp"

#include <cctype>

#include "proto/crc16.hpp"

namespace gear::proto {

namespace {

bool is_obis_reference(const std::string& s) {
    // pattern A-B:C.D.E with decimal fields
    std::size_t pos = 0;
    auto digits = [&]() {
        const std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return pos > start;
    };
    if (!digits()) return false;
    if (pos >= s.size() || s[pos] != '-') return false;
    ++pos;
    if (!digits()) return false;
    if (pos >= s.size() || s[pos] != ':') return false;
    ++pos;
    if (!digits()) return false;
    if (pos >= s.size() || s[pos] != '.') return false;
    ++pos;
    if (!digits()) return false;
    if (pos >= s.size() || s[pos] != '.') return false;
    ++pos;
    if (!digits()) return false;
    return pos == s.size();
}

// parse "(v1)(v2)..." starting at `pos`; true on success
bool parse_value_groups(const std::string& line, std::size_t pos, std::vector<ObisValue>& out) {
    while (pos < line.size()) {
        if (line[pos] != '(') return false;
        const std::size_t close = line.find(')', pos + 1);
        if (close == std::string::npos) return false;
        std::string group = line.substr(pos + 1, close - pos - 1);
        const std::size_t star = group.rfind('*');
        ObisValue v;
        if (star != std::string::npos) {
            v.text = group.substr(0, star);
            v.unit = group.substr(star + 1);
        } else {
            v.text = std::move(group);
        }
        out.push_back(std::move(v));
        pos = close + 1;
    }
    return true;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty() && cur.back() == '\r') cur.pop_back();
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

}  // namespace

const ObisObject* P1Telegram::find(const std::string& reference) const {
    for (const auto& o : objects) {
        if (o.reference == reference) return &o;
    }
    return nullptr;
}

P1ParseResult parse_p1_telegram(const std::string& text) {
    P1ParseResult result;
    auto fail = [&](int line, std::string message) {
        result.error = {line, std::move(message)};
        return result;
    };

    const auto lines = split_lines(text);
    if (lines.empty()) return fail(1, "empty telegram");
    if (lines[0].empty() || lines[0][0] != '/') return fail(1, "missing '/' start marker");

    P1Telegram telegram;
    telegram.header = lines[0].substr(1);
    if (telegram.header.empty()) return fail(1, "empty identification header");

    bool terminated = false;
    for (std::size_t n = 1; n < lines.size(); ++n) {
        const std::string& line = lines[n];
        const int line_no = static_cast<int>(n + 1);
        if (line.empty()) continue;

        if (line[0] == '!') {
            const std::string trailer = line.substr(1);
            if (!trailer.empty()) {
                if (trailer.size() != 4) return fail(line_no, "CRC trailer is not 4 hex digits");
                std::uint16_t crc = 0;
                for (char c : trailer) {
                    const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
                    int nibble;
                    if (u >= '0' && u <= '9')
                        nibble = u - '0';
                    else if (u >= 'A' && u <= 'F')
                        nibble = u - 'A' + 10;
                    else
                        return fail(line_no, "CRC trailer is not 4 hex digits");
                    crc = static_cast<std::uint16_t>((crc << 4) | nibble);
                }
                telegram.crc = crc;
            }
            terminated = true;
            // ignore trailing garbage after the end marker line
            break;
        }

        if (line[0] == '(') {
            // continuation of the previous object (DSMR 3.0 gas value line)
            if (telegram.objects.empty())
                return fail(line_no, "value group without a preceding OBIS line");
            if (!parse_value_groups(line, 0, telegram.objects.back().values))
                return fail(line_no, "malformed value group");
            continue;
        }

        const std::size_t paren = line.find('(');
        if (paren == std::string::npos)
            return fail(line_no, "data line has no value group");
        ObisObject obj;
        obj.reference = line.substr(0, paren);
        obj.line = line_no;
        if (!is_obis_reference(obj.reference))
            return fail(line_no, "malformed OBIS reference '" + obj.reference + "'");
        if (!parse_value_groups(line, paren, obj.values))
            return fail(line_no, "malformed value group");
        telegram.objects.push_back(std::move(obj));
    }

    if (!terminated) return fail(static_cast<int>(lines.size()), "missing '!' end marker");
    result.telegram = std::move(telegram);
    return result;
}

CrcVerdict verify_telegram_crc(const std::string& raw) {
    CrcVerdict verdict;
    const std::size_t start = raw.find('/');
    const std::size_t end = raw.rfind('!');
    if (start == std::string::npos || end == std::string::npos || end < start) return verdict;

    // trailer: hex digits directly following '!'
    std::string trailer;
    for (std::size_t i = end + 1; i < raw.size() && trailer.size() < 4; ++i) {
        if (std::isxdigit(static_cast<unsigned char>(raw[i])))
            trailer.push_back(raw[i]);
        else
            break;
    }
    if (trailer.size() != 4) return verdict;  // kAbsent

    std::uint16_t found = 0;
    for (char c : trailer) {
        const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        found = static_cast<std::uint16_t>((found << 4) |
                                           (u <= '9' ? u - '0' : u - 'A' + 10));
    }
    verdict.found = found;
    verdict.expected = crc16(std::string_view(raw).substr(start, end - start + 1));
    verdict.kind = (verdict.expected == found) ? CrcVerdict::kOk : CrcVerdict::kMismatch;
    return verdict;
}

}  // namespace gear::proto
