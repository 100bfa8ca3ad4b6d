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

#include "sim/api_client.hpp"

#include <httplib.h>

namespace gear::sim {

namespace {

nlohmann::json parse_body(const std::string& text) {
    if (text.empty()) return nlohmann::json::object();
    auto parsed = nlohmann::json::parse(text, nullptr, false);
    if (parsed.is_discarded()) return nlohmann::json{{"raw", text}};
    return parsed;
}

}  // namespace

ApiClient::ApiClient(const std::string& base_url)
    : base_url_(base_url), http_(std::make_unique<httplib::Client>(base_url)) {
    http_->set_keep_alive(true);
    http_->set_read_timeout(30, 0);
    http_->set_write_timeout(30, 0);
}

ApiClient::~ApiClient() = default;

std::string ApiClient::Response::error_text() const {
    if (body.contains("message")) return body["message"].get<std::string>();
    if (body.contains("error")) return body["error"].dump();
    return "HTTP status " + std::to_string(status);
}

ApiClient::Response ApiClient::post(const std::string& path, const nlohmann::json& body,
                                    const std::string& bearer_token) {
    httplib::Headers headers;
    if (!bearer_token.empty()) headers.emplace("Authorization", "Bearer " + bearer_token);
    const auto res = http_->Post(path, headers, body.dump(), "application/json");
    if (!res) return {0, nlohmann::json{{"message", "server unreachable at " + base_url_}}};
    return {res->status, parse_body(res->body)};
}

ApiClient::Response ApiClient::get(const std::string& path, const std::string& bearer_token) {
    httplib::Headers headers;
    if (!bearer_token.empty()) headers.emplace("Authorization", "Bearer " + bearer_token);
    const auto res = http_->Get(path, headers);
    if (!res) return {0, nlohmann::json{{"message", "server unreachable at " + base_url_}}};
    if (res->get_header_value("Content-Type").rfind("text/csv", 0) == 0)
        return {res->status, nlohmann::json{{"csv", res->body}}};
    return {res->status, parse_body(res->body)};
}

}  // namespace gear::sim
