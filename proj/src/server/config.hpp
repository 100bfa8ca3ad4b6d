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

#ifndef GEAR_SERVER_CONFIG_HPP
#define GEAR_SERVER_CONFIG_HPP

#include <string>

namespace gear::server {

/// Server configuration: a JSON file, overridable by environment
/// variables (GEAR_SERVER_LISTEN, GEAR_SERVER_PORT, GEAR_SERVER_ADMIN_TOKEN,
/// GEAR_SERVER_DB, GEAR_SERVER_OVERDUE_MULT).
struct ServerConfig {
    std::string listen_host = "127.0.0.1";
    int listen_port = 8080;
    std::string admin_token;
    std::string db_path = "gear.db";
    double overdue_multiplier = 2.0;

    /// Load from a JSON file (optional) and apply env overrides.
    /// Throws std::runtime_error on malformed files.
    static ServerConfig load(const std::string& config_path);
    static ServerConfig from_env(ServerConfig base);
};

}  // namespace gear::server

#endif  // GEAR_SERVER_CONFIG_HPP
