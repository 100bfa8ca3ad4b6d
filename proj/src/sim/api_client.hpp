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

#ifndef GEAR_SIM_API_CLIENT_HPP
#define GEAR_SIM_API_CLIENT_HPP

#include <json.hpp>
#include <memory>
#include <string>

namespace httplib {
class Client;
}

namespace gear::sim {

/// JSON client for the campaign server API; used by the simulator's app
/// and device roles and by the deployer CLI.
class ApiClient {
   public:
    explicit ApiClient(const std::string& base_url);
    ~ApiClient();

    struct Response {
        int status = 0;
        nlohmann::json body;

        bool ok() const { return status >= 200 && status < 300; }
        /// error text the server attached, or a transport note
        std::string error_text() const;
    };

    Response post(const std::string& path, const nlohmann::json& body,
                  const std::string& bearer_token);
    Response get(const std::string& path, const std::string& bearer_token);

    const std::string& base_url() const { return base_url_; }

   private:
    std::string base_url_;
    std::unique_ptr<httplib::Client> http_;
};

}  // namespace gear::sim

#endif  // GEAR_SIM_API_CLIENT_HPP
