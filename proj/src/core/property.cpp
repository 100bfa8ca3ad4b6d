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

#include "core/property.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>

namespace gear::core {

namespace {

bool is_lower_snake(const std::string& s) {
    if (s.empty()) return false;
    if (!std::islower(static_cast<unsigned char>(s.front()))) return false;
    bool prev_underscore = false;
    for (char c : s) {
        if (c == '_') {
            if (prev_underscore) return false;
            prev_underscore = true;
        } else if (std::islower(static_cast<unsigned char>(c)) ||
                   std::isdigit(static_cast<unsigned char>(c))) {
            prev_underscore = false;
        } else {
            return false;
        }
    }
    return !prev_underscore;
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
}

bool is_alnum_token(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

// unit suffixes appearing in the current property catalog; the vocabulary is
// open, unknown suffixes validate with a warning
const std::set<std::string>& known_units() {
    static const std::set<std::string> units = {"0", "p", "ppm", "degC", "kWh", "m3"};
    return units;
}

bool parse_integer(const std::string& text, bool allow_sign, std::int64_t& out) {
    if (text.empty()) return false;
    std::size_t pos = 0;
    if (allow_sign && (text[0] == '+' || text[0] == '-')) pos = 1;
    if (pos == text.size()) return false;
    for (std::size_t i = pos; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    }
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (errno == ERANGE || end != text.c_str() + text.size()) return false;
    out = v;
    return true;
}

bool parse_decimal(const std::string& text, double& out) {
    if (text.empty()) return false;
    std::size_t pos = 0;
    if (text[0] == '+' || text[0] == '-') pos = 1;
    bool digits = false, dot = false;
    for (std::size_t i = pos; i < text.size(); ++i) {
        const char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = true;
        } else if (c == '.' && !dot) {
            dot = true;
        } else {
            return false;
        }
    }
    if (!digits) return false;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (errno == ERANGE || end != text.c_str() + text.size()) return false;
    out = v;
    return true;
}

std::optional<std::int64_t> integral_of(const RawValue& raw) {
    if (const auto* i = std::get_if<std::int64_t>(&raw)) return *i;
    if (const auto* d = std::get_if<double>(&raw)) {
        if (!std::isfinite(*d)) return std::nullopt;
        if (*d != std::floor(*d)) return std::nullopt;
        if (*d > 9.2e18 || *d < -9.2e18) return std::nullopt;
        return static_cast<std::int64_t>(*d);
    }
    return std::nullopt;
}

std::optional<double> numeric_of(const RawValue& raw) {
    if (const auto* d = std::get_if<double>(&raw)) {
        if (!std::isfinite(*d)) return std::nullopt;
        return *d;
    }
    if (const auto* i = std::get_if<std::int64_t>(&raw)) return static_cast<double>(*i);
    return std::nullopt;
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    // avoid the separate "-0.0" rendering
    if (std::strcmp(buf, "-0") == 0 || std::strncmp(buf, "-0.", 3) == 0) {
        bool all_zero = true;
        for (const char* p = buf + 1; *p; ++p) {
            if (*p != '0' && *p != '.') {
                all_zero = false;
                break;
            }
        }
        if (all_zero) return buf + 1;
    }
    return buf;
}

}  // namespace

const char* format_tag(ValueFormat f) {
    switch (f) {
        case ValueFormat::kUnsigned: return "%u";
        case ValueFormat::kSigned: return "%d";
        case ValueFormat::kFixed1: return "%.1f";
        case ValueFormat::kFixed2: return "%.2f";
        case ValueFormat::kFixed3: return "%.3f";
        case ValueFormat::kString: return "%s";
    }
    return "%s";
}

std::optional<ValueFormat> format_from_tag(const std::string& tag) {
    if (tag == "%u") return ValueFormat::kUnsigned;
    if (tag == "%d") return ValueFormat::kSigned;
    if (tag == "%.1f") return ValueFormat::kFixed1;
    if (tag == "%.2f") return ValueFormat::kFixed2;
    if (tag == "%.3f") return ValueFormat::kFixed3;
    if (tag == "%s") return ValueFormat::kString;
    return std::nullopt;
}

NameVerdict validate_property_name(const std::string& name) {
    NameVerdict v;
    if (name.empty()) {
        v.kind = NameVerdict::kInvalid;
        v.reason = "empty name";
        return v;
    }
    const std::size_t sep = name.find("__");
    if (sep == std::string::npos) {
        if (is_identifier(name)) {
            v.kind = NameVerdict::kLegacy;
            return v;
        }
        v.kind = NameVerdict::kInvalid;
        v.reason = "no double-underscore separator between quantity and unit";
        return v;
    }
    const std::string quantity = name.substr(0, sep);
    const std::string unit = name.substr(sep + 2);
    if (quantity.empty()) {
        v.kind = NameVerdict::kInvalid;
        v.reason = "empty quantity part before '__'";
        return v;
    }
    if (!is_lower_snake(quantity)) {
        v.kind = NameVerdict::kInvalid;
        v.reason = "quantity part is not lowercase snake_case";
        return v;
    }
    if (unit.empty()) {
        v.kind = NameVerdict::kInvalid;
        v.reason = "empty unit part after '__'";
        return v;
    }
    if (!is_alnum_token(unit)) {
        v.kind = NameVerdict::kInvalid;
        v.reason = "unit part contains characters outside [A-Za-z0-9]";
        return v;
    }
    v.kind = NameVerdict::kValid;
    if (!known_units().count(unit)) v.warning = "unknown unit suffix '" + unit + "'";
    return v;
}

std::optional<std::string> render_value(ValueFormat format, const RawValue& raw) {
    switch (format) {
        case ValueFormat::kUnsigned: {
            const auto i = integral_of(raw);
            if (!i || *i < 0) return std::nullopt;
            return std::to_string(*i);
        }
        case ValueFormat::kSigned: {
            const auto i = integral_of(raw);
            if (!i) return std::nullopt;
            return std::to_string(*i);
        }
        case ValueFormat::kFixed1: {
            const auto d = numeric_of(raw);
            if (!d) return std::nullopt;
            return fixed(*d, 1);
        }
        case ValueFormat::kFixed2: {
            const auto d = numeric_of(raw);
            if (!d) return std::nullopt;
            return fixed(*d, 2);
        }
        case ValueFormat::kFixed3: {
            const auto d = numeric_of(raw);
            if (!d) return std::nullopt;
            return fixed(*d, 3);
        }
        case ValueFormat::kString: {
            if (const auto* s = std::get_if<std::string>(&raw)) return *s;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::optional<RawValue> parse_value(ValueFormat format, const std::string& text) {
    switch (format) {
        case ValueFormat::kUnsigned: {
            std::int64_t v = 0;
            if (!parse_integer(text, false, v)) return std::nullopt;
            return RawValue{v};
        }
        case ValueFormat::kSigned: {
            std::int64_t v = 0;
            if (!parse_integer(text, true, v)) return std::nullopt;
            return RawValue{v};
        }
        case ValueFormat::kFixed1:
        case ValueFormat::kFixed2:
        case ValueFormat::kFixed3: {
            double v = 0.0;
            if (!parse_decimal(text, v)) return std::nullopt;
            return RawValue{v};
        }
        case ValueFormat::kString:
            return RawValue{text};
    }
    return std::nullopt;
}

bool value_matches_format(ValueFormat format, const std::string& text) {
    return parse_value(format, text).has_value();
}

}  // namespace gear::core
