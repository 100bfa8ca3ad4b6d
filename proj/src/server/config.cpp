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

#include "server/config.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace gear::server {

ServerConfig ServerConfig::load(const std::string& config_path) {
    ServerConfig cfg;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot open config file " + config_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("malformed config file " + config_path + ": " + e.what());
        }
        cfg.listen_host = j.value("listen_host", cfg.listen_host);
        cfg.listen_port = j.value("listen_port", cfg.listen_port);
        cfg.admin_token = j.value("admin_token", cfg.admin_token);
        cfg.db_path = j.value("db_path", cfg.db_path);
        cfg.overdue_multiplier = j.value("overdue_multiplier", cfg.overdue_multiplier);
    }
    return from_env(cfg);
}

ServerConfig ServerConfig::from_env(ServerConfig base) {
    if (const char* v = std::getenv("GEAR_SERVER_LISTEN")) base.listen_host = v;
    if (const char* v = std::getenv("GEAR_SERVER_PORT")) base.listen_port = std::atoi(v);
    if (const char* v = std::getenv("GEAR_SERVER_ADMIN_TOKEN")) base.admin_token = v;
    if (const char* v = std::getenv("GEAR_SERVER_DB")) base.db_path = v;
    if (const char* v = std::getenv("GEAR_SERVER_OVERDUE_MULT"))
        base.overdue_multiplier = std::atof(v);
    return base;
}

}  // namespace gear::server
