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

#ifndef GEAR_SIM_DEVICE_HPP
#define GEAR_SIM_DEVICE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sim/api_client.hpp"
#include "sim/buffer.hpp"
#include "sim/clock.hpp"
#include "sim/generators.hpp"
#include "sim/power.hpp"

namespace gear::sim {

/// One simulated measurement device: generator, device clock, persistent
/// buffer, power accounting, and (for primary devices) a server session.
/// Satellites have no uplink of their own; their measurements queue at the
/// relay and ride its upload cycle under the satellite's own identity.
class SimDevice {
   public:
    SimDevice(std::string name, std::string type, std::unique_ptr<SensorGenerator> generator,
              double drift_ppm, core::UnixSeconds activated_at, std::size_t buffer_capacity,
              PowerProfile profile);

    /// Take one measurement tick; returns how many measurements were
    /// generated (they land in the local buffer, or at the relay for a
    /// satellite).
    std::size_t measure(core::UnixSeconds true_time);

    /// Drain the buffer into one upload; returns false if there was nothing
    /// to send. Throws std::runtime_error when the server rejects.
    bool upload(ApiClient& client, core::UnixSeconds true_time);

    /// Drain any satellite queues held at this relay, one upload per
    /// satellite, attributed to the satellites' own sessions.
    void upload_satellites(ApiClient& client, core::UnixSeconds true_time);

    void sync_time(core::UnixSeconds true_time);

    /// Account energy for an idle gap ending now.
    void account_idle(core::UnixSeconds until_true_time);

    void attach_satellite(SimDevice* satellite);

    const std::string& name() const { return name_; }
    const std::string& type() const { return type_; }
    const std::string& session_token() const { return session_token_; }
    void set_session_token(std::string token) { session_token_ = std::move(token); }

    std::uint64_t generated() const { return generated_; }
    std::uint64_t stored() const { return stored_; }
    std::uint64_t duplicates() const { return duplicates_; }
    std::uint64_t dropped() const;
    double energy_joules() const { return energy_j_; }
    int sync_count() const { return clock_.sync_count(); }
    int overdue_episodes() const { return overdue_episodes_; }
    core::Seconds tick_interval() const { return generator_->tick_interval(); }
    bool is_satellite() const { return relay_ != nullptr; }
    void set_relay(SimDevice* relay) { relay_ = relay; }

    /// Marks upload gaps longer than `grace` as overdue episodes.
    void set_overdue_grace(core::Seconds grace) { overdue_grace_ = grace; }

    void note_upload_result(std::uint64_t stored, std::uint64_t duplicates);

   private:
    bool post_upload(ApiClient& client, const std::string& session,
                     std::vector<core::Measurement> measurements, core::UnixSeconds upload_time,
                     SimDevice* counted_device);

    std::string name_;
    std::string type_;
    std::unique_ptr<SensorGenerator> generator_;
    DeviceClock clock_;
    MeasurementBuffer buffer_;
    PowerProfile profile_;
    std::string session_token_;

    SimDevice* relay_ = nullptr;                  // set on satellites
    std::vector<SimDevice*> satellites_;          // set on relays
    std::map<std::string, MeasurementBuffer> satellite_queues_;

    std::uint64_t generated_ = 0;
    std::uint64_t stored_ = 0;
    std::uint64_t duplicates_ = 0;
    double energy_j_ = 0.0;
    core::UnixSeconds last_event_ = 0;
    core::UnixSeconds last_delivery_ = 0;
    core::Seconds overdue_grace_ = 0;
    int overdue_episodes_ = 0;
};

}  // namespace gear::sim

#endif  // GEAR_SIM_DEVICE_HPP
