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

#ifndef GEAR_SIM_CAMPAIGN_HPP
#define GEAR_SIM_CAMPAIGN_HPP

#include <json.hpp>
#include <string>
#include <vector>

#include "sim/scenario.hpp"

namespace gear::sim {

struct SourceReport {
    std::string pseudonym;
    std::string type;
    std::string device_name;
    std::uint64_t generated = 0;
    std::uint64_t stored = 0;
    std::uint64_t duplicates = 0;
    std::uint64_t dropped = 0;
    double energy_joules = 0.0;
    int sync_count = 0;
    int overdue_episodes = 0;
};

struct CampaignReport {
    std::string scenario_name;
    std::uint64_t seed = 0;
    core::UnixSeconds start_time = 0;
    core::Seconds horizon = 0;
    std::int64_t campaign_id = 0;
    std::vector<SourceReport> sources;
    std::vector<std::string> failed_households;
    int overdue_sources_at_end = 0;
    std::vector<std::string> event_log;

    std::uint64_t total_generated() const;
    std::uint64_t total_stored() const;
    std::uint64_t total_duplicates() const;
    std::uint64_t total_dropped() const;
    bool conservation_holds() const;

    /// Machine-readable form with a stable field order; identical runs
    /// serialize byte-identically.
    nlohmann::ordered_json to_json() const;
    /// Human-readable per-source table.
    std::string to_table() const;
};

/// Provision accounts and devices through the real API, run every device on
/// one virtual clock, and deliver all buffered data. API failures abort the
/// affected household only.
CampaignReport run_campaign(const Scenario& scenario, const std::string& server_url,
                            const std::string& admin_token);

}  // namespace gear::sim

#endif  // GEAR_SIM_CAMPAIGN_HPP
