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

#ifndef GEAR_SIM_GENERATORS_HPP
#define GEAR_SIM_GENERATORS_HPP

#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace gear::sim {

/// The one-time smartphone registrations a living-room unit holds.
/// Scanning counts registered phones in range and never reports anything
/// about unregistered ones.
struct OccupancyRegistry {
    std::set<std::uint64_t> registered_ids;
};

struct OccupancyCounts {
    int onboarded = 0;  // registered phones
    int occupancy = 0;  // registered phones currently in range
};

OccupancyCounts occupancy_scan(const OccupancyRegistry& registry,
                               const std::set<std::uint64_t>& present_ids);

/// Produces a device's measurements tick by tick, through the same parsing
/// and sampling paths the real firmware feeds. Values come from smooth
/// diurnal models plus seeded noise; meter registers only ever grow.
class SensorGenerator {
   public:
    virtual ~SensorGenerator() = default;

    /// Measurements for the tick. `stamp` is the device clock reading to
    /// record, `true_time` the simulation ground truth driving the models.
    virtual std::vector<core::Measurement> tick(core::UnixSeconds stamp,
                                                core::UnixSeconds true_time) = 0;

    virtual core::Seconds tick_interval() const = 0;

    /// Expected number of measurements this generator produces per
    /// property over a horizon, for the closed-form count oracle.
    virtual std::vector<std::pair<std::string, std::int64_t>> expected_counts(
        core::Seconds horizon) const = 0;
};

struct GeneratorConfig {
    std::string device_type;
    std::uint64_t seed = 1;
    core::UnixSeconds start_time = 0;
    std::string timezone = "Europe/Amsterdam";
    int residents = 2;
    double dsmr_version = 5.0;  // smart-meter generator only
};

std::unique_ptr<SensorGenerator> make_generator(const GeneratorConfig& config);

}  // namespace gear::sim

#endif  // GEAR_SIM_GENERATORS_HPP
