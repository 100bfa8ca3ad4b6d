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

#ifndef GEAR_CORE_TYPES_HPP
#define GEAR_CORE_TYPES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace gear::core {

/// Unix time in whole seconds, UTC. Local time never enters stored data.
using UnixSeconds = std::int64_t;

/// Durations are whole seconds throughout; sub-second scheduling does not
/// occur in this system.
using Seconds = std::int64_t;

/// A single timestamped reading of one property. The value is kept in its
/// canonical rendered form so the stored byte sequence is what the format
/// tag defines; a missing reading is the absence of a Measurement, never a
/// zero value.
struct Measurement {
    std::string property;
    UnixSeconds time = 0;
    std::string value;

    friend bool operator==(const Measurement&, const Measurement&) = default;
};

/// A batch of measurements delivered by one data source in a single call.
struct Upload {
    UnixSeconds upload_time = 0;
    std::vector<Measurement> measurements;

    std::size_t size() const { return measurements.size(); }
};

enum class SourceVariant {
    kDeviceType,
    kEnergyQuery,
    kCloudFeed,
};

}  // namespace gear::core

#endif  // GEAR_CORE_TYPES_HPP
