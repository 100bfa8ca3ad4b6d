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

#ifndef GEAR_CORE_PROPERTY_HPP
#define GEAR_CORE_PROPERTY_HPP

#include <optional>
#include <string>
#include <variant>

#include "core/types.hpp"

namespace gear::core {

/// The six value formats used by the property catalog. Values are stored as
/// the canonical string a format produces; numeric views are computed on
/// demand.
enum class ValueFormat {
    kUnsigned,  // "%u"
    kSigned,    // "%d"
    kFixed1,    // "%.1f"
    kFixed2,    // "%.2f"
    kFixed3,    // "%.3f"
    kString,    // "%s"
};

const char* format_tag(ValueFormat f);
std::optional<ValueFormat> format_from_tag(const std::string& tag);

/// A named measurable quantity: name, unit, value format, default sampling
/// interval.
struct PropertyDescriptor {
    std::string name;
    std::string unit;
    ValueFormat value_format = ValueFormat::kString;
    Seconds default_interval = 0;

    friend bool operator==(const PropertyDescriptor&, const PropertyDescriptor&) = default;
};

/// Verdict of property-name validation. Names of the form
/// `<physiquant>__<unit>` are the convention; bare identifiers from the older
/// device generations (e.g. "boilerSupplyTemp") are accepted as legacy so
/// historical imports stay loadable.
struct NameVerdict {
    enum Kind { kValid, kLegacy, kInvalid } kind = kInvalid;
    std::string reason;   // set when invalid
    std::string warning;  // set when valid but the unit suffix is unknown

    bool acceptable() const { return kind != kInvalid; }
};

NameVerdict validate_property_name(const std::string& name);

/// A raw value to be rendered under a format: numeric or string.
using RawValue = std::variant<double, std::int64_t, std::string>;

/// Canonical rendering under the descriptor's format tag. Returns nullopt on
/// a type mismatch (string under a numeric format, negative under "%u",
/// non-finite floating input).
std::optional<std::string> render_value(ValueFormat format, const RawValue& raw);

/// Inverse of render_value; leading zeros are legal in numeric fields
/// (meter registers are zero-padded). Round-trip law:
/// parse(render(x)) == x at the format's precision.
std::optional<RawValue> parse_value(ValueFormat format, const std::string& text);

/// True when `text` parses under the format.
bool value_matches_format(ValueFormat format, const std::string& text);

}  // namespace gear::core

#endif  // GEAR_CORE_PROPERTY_HPP
