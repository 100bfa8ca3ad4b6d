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

#include "sim/device.hpp"

#include <stdexcept>

namespace gear::sim {

namespace {

// group a drained buffer into the upload body shape
nlohmann::json upload_body(const std::vector<core::Measurement>& measurements,
                           core::UnixSeconds upload_time) {
    std::map<std::string, nlohmann::json> groups;
    for (const auto& m : measurements) {
        groups[m.property].push_back(nlohmann::json{{"time", m.time}, {"value", m.value}});
    }
    nlohmann::json property_measurements = nlohmann::json::array();
    for (auto& [property, list] : groups) {
        property_measurements.push_back(
            nlohmann::json{{"property_name", property}, {"measurements", list}});
    }
    return nlohmann::json{{"upload_time", upload_time},
                          {"property_measurements", property_measurements}};
}

}  // namespace

SimDevice::SimDevice(std::string name, std::string type,
                     std::unique_ptr<SensorGenerator> generator, double drift_ppm,
                     core::UnixSeconds activated_at, std::size_t buffer_capacity,
                     PowerProfile profile)
    : name_(std::move(name)),
      type_(std::move(type)),
      generator_(std::move(generator)),
      clock_(drift_ppm, activated_at),
      buffer_(buffer_capacity),
      profile_(profile),
      last_event_(activated_at),
      last_delivery_(activated_at) {}

std::size_t SimDevice::measure(core::UnixSeconds true_time) {
    const auto stamp = clock_.device_time(true_time);
    auto measurements = generator_->tick(stamp, true_time);
    generated_ += measurements.size();
    const std::size_t count = measurements.size();
    if (relay_) {
        auto& queue = relay_->satellite_queues_.at(name_);
        for (auto& m : measurements) queue.push(std::move(m));
    } else {
        for (auto& m : measurements) buffer_.push(std::move(m));
    }
    return count;
}

bool SimDevice::post_upload(ApiClient& client, const std::string& session,
                            std::vector<core::Measurement> measurements,
                            core::UnixSeconds upload_time, SimDevice* counted_device) {
    if (measurements.empty()) return false;
    const auto response = client.post("/upload", upload_body(measurements, upload_time), session);
    if (!response.ok())
        throw std::runtime_error("upload rejected for " + counted_device->name_ + ": " +
                                 response.error_text());
    counted_device->note_upload_result(response.body.value("stored", 0),
                                       response.body.value("duplicates", 0));
    return true;
}

void SimDevice::note_upload_result(std::uint64_t stored, std::uint64_t duplicates) {
    stored_ += stored;
    duplicates_ += duplicates;
}

bool SimDevice::upload(ApiClient& client, core::UnixSeconds true_time) {
    const auto upload_time = clock_.device_time(true_time);
    const bool sent = post_upload(client, session_token_, buffer_.drain(), upload_time, this);
    if (sent) {
        if (overdue_grace_ > 0 && true_time - last_delivery_ > overdue_grace_)
            ++overdue_episodes_;
        last_delivery_ = true_time;
    }
    return sent;
}

void SimDevice::upload_satellites(ApiClient& client, core::UnixSeconds true_time) {
    const auto upload_time = clock_.device_time(true_time);
    for (SimDevice* satellite : satellites_) {
        auto& queue = satellite_queues_.at(satellite->name());
        const bool sent = post_upload(client, satellite->session_token(), queue.drain(),
                                      upload_time, satellite);
        if (sent) {
            if (satellite->overdue_grace_ > 0 &&
                true_time - satellite->last_delivery_ > satellite->overdue_grace_)
                ++satellite->overdue_episodes_;
            satellite->last_delivery_ = true_time;
        }
    }
}

void SimDevice::sync_time(core::UnixSeconds true_time) { clock_.sync(true_time); }

void SimDevice::account_idle(core::UnixSeconds until_true_time) {
    if (until_true_time <= last_event_) return;
    const double gap = static_cast<double>(until_true_time - last_event_);
    const IdleMode mode = choose_power_strategy(gap, profile_);
    energy_j_ += idle_energy_joules(gap, mode, profile_);
    last_event_ = until_true_time;
}

void SimDevice::attach_satellite(SimDevice* satellite) {
    satellites_.push_back(satellite);
    satellite_queues_.emplace(satellite->name(),
                              MeasurementBuffer(satellite->buffer_.capacity()));
    satellite->set_relay(this);
}

std::uint64_t SimDevice::dropped() const {
    std::uint64_t total = buffer_.dropped();
    if (relay_) {
        const auto it = relay_->satellite_queues_.find(name_);
        if (it != relay_->satellite_queues_.end()) total += it->second.dropped();
    }
    return total;
}

}  // namespace gear::sim
