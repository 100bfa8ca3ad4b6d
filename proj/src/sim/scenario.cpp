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

#include "sim/scenario.hpp"

#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace gear::sim {

namespace {
using json = nlohmann::json;
}

Scenario Scenario::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

Scenario Scenario::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed scenario: ") + e.what());
    }
    Scenario s;
    try {
        s.name = j.value("name", s.name);
        s.seed = j.value("seed", s.seed);
        s.start_time = j.value("start_time", s.start_time);
        s.horizon = j.value("horizon_hours", s.horizon / 3600) * 3600;
        s.timezone = j.value("timezone", s.timezone);
        s.upload_interval = j.value("upload_interval_minutes", s.upload_interval / 60) * 60;
        s.ntp_sync_interval = j.value("ntp_sync_interval_hours", s.ntp_sync_interval / 3600) * 3600;
        s.drift_ppm = j.value("drift_ppm", s.drift_ppm);
        s.weather_zone_sigma_m = j.value("weather_zone_sigma_m", s.weather_zone_sigma_m);
        s.include_energy_queries = j.value("include_energy_queries", s.include_energy_queries);
        if (j.contains("power")) {
            const auto& p = j.at("power");
            s.power.boot_energy_j = p.value("boot_energy_j", s.power.boot_energy_j);
            s.power.sleep_power_w = p.value("sleep_power_w", s.power.sleep_power_w);
            s.power.off_power_w = p.value("off_power_w", s.power.off_power_w);
        }
        if (j.contains("random_outages")) {
            const auto& r = j.at("random_outages");
            RandomOutagePolicy policy;
            policy.count = r.value("count", 1);
            policy.min_duration = r.value("min_hours", 1) * 3600;
            policy.max_duration = r.value("max_hours", 6) * 3600;
            s.random_outages = policy;
        }
        for (const auto& h : j.value("households", json::array())) {
            HouseholdSpec hh;
            hh.pseudonym = h.at("pseudonym").get<std::string>();
            hh.home_lat = h.value("home_lat", hh.home_lat);
            hh.home_lng = h.value("home_lng", hh.home_lng);
            hh.residents = h.value("residents", hh.residents);
            for (const auto& d : h.at("devices")) {
                DeviceSpec spec;
                spec.type = d.at("type").get<std::string>();
                if (d.contains("relay_via")) spec.relay_via = d.at("relay_via").get<std::string>();
                hh.devices.push_back(std::move(spec));
            }
            for (const auto& o : h.value("outages", json::array())) {
                OutageWindow w;
                w.start = s.start_time + static_cast<core::Seconds>(
                                             o.at("start_hours").get<double>() * 3600.0);
                w.duration =
                    static_cast<core::Seconds>(o.at("duration_hours").get<double>() * 3600.0);
                hh.outages.push_back(w);
            }
            s.households.push_back(std::move(hh));
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed scenario: ") + e.what());
    }
    if (s.households.empty()) throw std::runtime_error("scenario declares no households");
    if (s.horizon <= 0) throw std::runtime_error("scenario horizon must be positive");
    return s;
}

std::string Scenario::to_json_text() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["seed"] = seed;
    j["start_time"] = start_time;
    j["horizon_hours"] = horizon / 3600;
    j["timezone"] = timezone;
    j["upload_interval_minutes"] = upload_interval / 60;
    j["ntp_sync_interval_hours"] = ntp_sync_interval / 3600;
    j["drift_ppm"] = drift_ppm;
    j["weather_zone_sigma_m"] = weather_zone_sigma_m;
    j["include_energy_queries"] = include_energy_queries;
    j["power"] = {{"boot_energy_j", power.boot_energy_j},
                  {"sleep_power_w", power.sleep_power_w},
                  {"off_power_w", power.off_power_w}};
    if (random_outages) {
        j["random_outages"] = {{"count", random_outages->count},
                               {"min_hours", random_outages->min_duration / 3600},
                               {"max_hours", random_outages->max_duration / 3600}};
    }
    j["households"] = nlohmann::ordered_json::array();
    for (const auto& hh : households) {
        nlohmann::ordered_json h;
        h["pseudonym"] = hh.pseudonym;
        h["home_lat"] = hh.home_lat;
        h["home_lng"] = hh.home_lng;
        h["residents"] = hh.residents;
        h["devices"] = nlohmann::ordered_json::array();
        for (const auto& d : hh.devices) {
            nlohmann::ordered_json ds{{"type", d.type}};
            if (d.relay_via) ds["relay_via"] = *d.relay_via;
            h["devices"].push_back(ds);
        }
        if (!hh.outages.empty()) {
            h["outages"] = nlohmann::ordered_json::array();
            for (const auto& o : hh.outages) {
                h["outages"].push_back(
                    {{"start_hours", static_cast<double>(o.start - start_time) / 3600.0},
                     {"duration_hours", static_cast<double>(o.duration) / 3600.0}});
            }
        }
        j["households"].push_back(h);
    }
    return j.dump(2);
}

}  // namespace gear::sim
