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

#ifndef GEAR_SERVER_HTTP_API_HPP
#define GEAR_SERVER_HTTP_API_HPP

#include <memory>
#include <string>
#include <thread>

#include "server/service.hpp"

namespace httplib {
class Server;
}

namespace gear::server {

/// JSON-over-HTTP binding of the service. Owns no state beyond the wiring;
/// the embedded form runs the listener on a background thread so tests and
/// the simulator can target a real socket.
class HttpApi {
   public:
    explicit HttpApi(Service& service);
    ~HttpApi();

    HttpApi(const HttpApi&) = delete;
    HttpApi& operator=(const HttpApi&) = delete;

    /// Serve until stop(); blocks. Returns false if binding fails.
    bool listen(const std::string& host, int port);

    /// Bind to a free port and serve on a background thread; returns the
    /// port.
    int start_background(const std::string& host);

    void stop();

   private:
    void route();

    Service& service_;
    std::unique_ptr<httplib::Server> http_;
    std::thread worker_;
};

}  // namespace gear::server

#endif  // GEAR_SERVER_HTTP_API_HPP
