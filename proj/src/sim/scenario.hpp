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

#ifndef GEAR_SIM_SCENARIO_HPP
#define GEAR_SIM_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/types.hpp"
#include "sim/power.hpp"

namespace gear::sim {

struct DeviceSpec {
    std::string type;
    /// Satellite devices name the device type that relays for them; their
    /// measurements only reach the server through that relay's uploads.
    std::optional<std::string> relay_via;
};

struct OutageWindow {
    core::UnixSeconds start = 0;  // absolute
    core::Seconds duration = 0;

    bool covers(core::UnixSeconds t) const { return t >= start && t < start + duration; }
};

/// Draws `count` outages of min..max hours at random positions, per
/// household, from the scenario seed.
struct RandomOutagePolicy {
    int count = 0;
    core::Seconds min_duration = 3600;
    core::Seconds max_duration = 6 * 3600;
};

struct HouseholdSpec {
    std::string pseudonym;
    std::vector<DeviceSpec> devices;
    std::vector<OutageWindow> outages;  // explicit windows, in addition to random ones
    double home_lat = 52.5126;          // defaults near the deployment region
    double home_lng = 6.0946;
    int residents = 2;
};

struct Scenario {
    std::string name = "sim-campaign";
    std::uint64_t seed = 1;
    core::UnixSeconds start_time = 1735689600;  // 2025-01-01T00:00:00Z
    core::Seconds horizon = 24 * 3600;
    std::string timezone = "Europe/Amsterdam";
    std::vector<HouseholdSpec> households;
    std::optional<RandomOutagePolicy> random_outages;

    core::Seconds upload_interval = 6 * 3600;
    core::Seconds ntp_sync_interval = 24 * 3600;
    double drift_ppm = 0.0;
    double weather_zone_sigma_m = 3000.0;
    bool include_energy_queries = true;
    PowerProfile power = core_ink_profile();

    /// Parse a scenario file; throws std::runtime_error with a message
    /// naming the offending field on malformed input.
    static Scenario load(const std::string& path);
    static Scenario from_json_text(const std::string& text);
    std::string to_json_text() const;
};

}  // namespace gear::sim

#endif  // GEAR_SIM_SCENARIO_HPP
