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

#include "server/http_api.hpp"

#include <httplib.h>

#include <chrono>
#include <json.hpp>

namespace gear::server {

namespace {

using json = nlohmann::json;
using core::UnixSeconds;

std::string bearer_of(const httplib::Request& req) {
    const std::string auth = req.get_header_value("Authorization");
    constexpr const char* kPrefix = "Bearer ";
    if (auth.rfind(kPrefix, 0) == 0) return auth.substr(7);
    return "";
}

void reply_json(httplib::Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, const ApiError& e) {
    reply_json(res, json{{"error", e.code()}, {"message", e.what()}}, e.status());
}

UnixSeconds now_or_default(const json& body) {
    if (body.contains("time")) return body.at("time").get<UnixSeconds>();
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

UnixSeconds now_or_default(const httplib::Request& req) {
    if (req.has_param("now")) return std::stoll(req.get_param_value("now"));
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

json source_status_json(const SourceStatus& s) {
    json j{{"type", s.type_name},
           {"kind", s.kind == core::SourceVariant::kDeviceType  ? "device"
                    : s.kind == core::SourceVariant::kEnergyQuery ? "energy_query"
                                                                  : "cloud_feed"},
           {"activated", s.activated},
           {"overdue", s.overdue}};
    if (s.expected_interval > 0) j["expected_interval"] = s.expected_interval;
    if (s.latest_measurement_time) j["latest_measurement_time"] = *s.latest_measurement_time;
    if (s.next_expected_time) j["next_expected_time"] = *s.next_expected_time;
    if (s.first_heartbeat_time) j["first_heartbeat_time"] = *s.first_heartbeat_time;
    return j;
}

}  // namespace

HttpApi::HttpApi(Service& service)
    : service_(service), http_(std::make_unique<httplib::Server>()) {
    route();
}

HttpApi::~HttpApi() { stop(); }

void HttpApi::route() {
    auto handle = [this](auto fn) {
        return [this, fn](const httplib::Request& req, httplib::Response& res) {
            try {
                fn(req, res);
            } catch (const ApiError& e) {
                reply_error(res, e);
            } catch (const json::exception& e) {
                reply_error(res, ApiError(400, "bad_request", e.what()));
            } catch (const std::exception& e) {
                reply_error(res, ApiError(500, "internal", e.what()));
            }
        };
    };

    http_->Get("/health", [](const httplib::Request&, httplib::Response& res) {
        reply_json(res, json{{"status", "ok"}});
    });

    http_->Post("/app", handle([this](const httplib::Request& req, httplib::Response& res) {
        const auto p = service_.authenticate(bearer_of(req));
        const json body = json::parse(req.body);
        const auto id = service_.create_app(p, body.at("name").get<std::string>());
        reply_json(res, json{{"app_id", id}});
    }));

    http_->Post("/campaign", handle([this](const httplib::Request& req, httplib::Response& res) {
        const auto p = service_.authenticate(bearer_of(req));
        const json body = json::parse(req.body);
        const auto id = service_.create_campaign(
            p, body.at("app_id").get<std::int64_t>(), body.at("name").get<std::string>(),
            body.at("data_source_list").get<std::vector<std::string>>());
        reply_json(res, json{{"campaign_id", id}});
    }));

    http_->Get("/campaign", handle([this](const httplib::Request& req, httplib::Response& res) {
        const auto p = service_.authenticate(bearer_of(req));
        json out = json::array();
        for (const auto& c : service_.list_campaigns(p)) {
            out.push_back(json{{"campaign_id", c.campaign_id},
                               {"app_id", c.app_id},
                               {"name", c.name},
                               {"data_source_list", c.data_source_list}});
        }
        reply_json(res, out);
    }));

    http_->Post("/account", handle([this](const httplib::Request& req, httplib::Response& res) {
        const auto p = service_.authenticate(bearer_of(req));
        const json body = json::parse(req.body);
        const auto created = service_.create_account(
            p, body.at("campaign_id").get<std::int64_t>(), now_or_default(body));
        reply_json(res, json{{"account_id", created.account_id},
                             {"activation_token", created.activation_token}});
    }));

    http_->Get("/account", handle([this](const httplib::Request& req, httplib::Response& res) {
        const auto p = service_.authenticate(bearer_of(req));
        std::optional<std::int64_t> campaign;
        if (req.has_param("campaign")) campaign = std::stoll(req.get_param_value("campaign"));
        json out = json::array();
        for (const auto& a : service_.list_accounts(p, campaign)) {
            out.push_back(json{{"account_id", a.account_id},
                               {"campaign_id", a.campaign_id},
                               {"activated", a.activated}});
        }
        reply_json(res, out);
    }));

    http_->Post("/account/activate",
                handle([this](const httplib::Request& req, httplib::Response& res) {
        const json body = json::parse(req.body);
        const auto r = service_.activate_account(
            body.at("activation_token").get<std::string>(), now_or_default(body));
        reply_json(res, json{{"session_token", r.session_token},
                             {"account_id", r.account_id},
                             {"campaign",
                              json{{"campaign_id", r.campaign.campaign_id},
                                   {"name", r.campaign.name},
                                   {"data_source_list", r.campaign.data_source_list}}}});
    }));

    http_->Post("/device", handle([this](const httplib::Request& req, httplib::Response& res) {
        const auto p = service_.authenticate(bearer_of(req));
        const json body = json::parse(req.body);
        const auto id = service_.register_device(
            p, body.at("device_name").get<std::string>(),
            body.at("device_type").get<std::string>(),
            body.at("proof_of_possession").get<std::string>());
        reply_json(res, json{{"device_id", id}});
    }));

    http_->Post("/device/activate",
                handle([this](const httplib::Request& req, httplib::Response& res) {
        const auto p = service_.authenticate(bearer_of(req));
        const json body = json::parse(req.body);
        const auto r = service_.activate_device(
            p, body.at("device_name").get<std::string>(),
            body.at("proof_of_possession").get<std::string>(), now_or_default(body));
        reply_json(res, json{{"session_token", r.session_token},
                             {"device_id", r.device_id},
                             {"device_type", r.type_name}});
    }));

    http_->Post("/upload", handle([this](const httplib::Request& req, httplib::Response& res) {
        const auto p = service_.authenticate(bearer_of(req));
        const json body = json::parse(req.body);
        UploadBody upload;
        upload.upload_time = body.at("upload_time").get<UnixSeconds>();
        for (const auto& group : body.at("property_measurements")) {
            const auto property = group.at("property_name").get<std::string>();
            for (const auto& m : group.at("measurements")) {
                upload.measurements.push_back(core::Measurement{
                    property, m.at("time").get<UnixSeconds>(),
                    m.at("value").get<std::string>()});
            }
        }
        const auto counts = service_.ingest_upload(p, upload);
        reply_json(res, json{{"stored", counts.stored}, {"duplicates", counts.duplicates}});
    }));

    http_->Post("/energyquery",
                handle([this](const httplib::Request& req, httplib::Response& res) {
        const auto p = service_.authenticate(bearer_of(req));
        const json body = json::parse(req.body);
        const json& payload = body.at("payload");
        // privacy guard: the payload may carry the cell id and timezone,
        // nothing else -- coordinates in particular are rejected
        for (const auto& [key, value] : payload.items()) {
            (void)value;
            if (key != "cell" && key != "tz")
                throw ApiError(400, "payload_rejected",
                               "weather-zone payloads carry only 'cell' and 'tz'; found '" +
                                   key + "'");
        }
        const auto counts = service_.ingest_energy_query(
            p, body.at("query_kind").get<std::string>(),
            payload.at("cell").get<std::string>(), payload.at("tz").get<std::string>(),
            now_or_default(body));
        reply_json(res, json{{"stored", counts.stored}, {"duplicates", counts.duplicates}});
    }));

    http_->Post("/cloudfeed/activate",
                handle([this](const httplib::Request& req, httplib::Response& res) {
        const auto p = service_.authenticate(bearer_of(req));
        const json body = json::parse(req.body);
        const auto id = service_.activate_cloud_feed(
            p, body.at("feed_type").get<std::string>(), now_or_default(body));
        reply_json(res, json{{"authorization_id", id}});
    }));

    http_->Get("/status", handle([this](const httplib::Request& req, httplib::Response& res) {
        const auto p = service_.authenticate(bearer_of(req));
        std::optional<std::int64_t> campaign;
        if (req.has_param("campaign")) campaign = std::stoll(req.get_param_value("campaign"));
        const auto statuses = service_.data_source_status(p, campaign, now_or_default(req));
        json out = json::array();
        for (const auto& account : statuses) {
            json sources = json::array();
            for (const auto& s : account.sources) sources.push_back(source_status_json(s));
            json entry{{"account_id", account.account_id}, {"sources", sources}};
            if (account.activated_at) entry["activated_at"] = *account.activated_at;
            entry["activated"] = account.activated_at.has_value();
            out.push_back(entry);
        }
        reply_json(res, out);
    }));

    http_->Post("/import", handle([this](const httplib::Request& req, httplib::Response& res) {
        const auto p = service_.authenticate(bearer_of(req));
        const json body = json::parse(req.body);
        std::vector<ImportRow> rows;
        for (const auto& r : body.at("rows")) {
            rows.push_back(ImportRow{r.at("account").get<std::string>(),
                                     r.at("source").get<std::string>(),
                                     r.at("property").get<std::string>(),
                                     r.value("unit", std::string{"n/a"}),
                                     r.at("time").get<UnixSeconds>(),
                                     r.at("value").get<std::string>()});
        }
        const auto counts = service_.import_batch(p, rows, now_or_default(body));
        reply_json(res, json{{"stored", counts.stored}, {"duplicates", counts.duplicates}});
    }));

    http_->Get("/export", handle([this](const httplib::Request& req, httplib::Response& res) {
        const auto p = service_.authenticate(bearer_of(req));
        auto param = [&](const char* name) -> std::optional<std::int64_t> {
            if (!req.has_param(name)) return std::nullopt;
            return std::stoll(req.get_param_value(name));
        };
        const auto csv = service_.export_measurements(p, param("campaign"), param("account"),
                                                      param("from"), param("to"));
        res.status = 200;
        res.set_content(csv, "text/csv");
    }));
}

bool HttpApi::listen(const std::string& host, int port) { return http_->listen(host, port); }

int HttpApi::start_background(const std::string& host) {
    const int port = http_->bind_to_any_port(host);
    if (port <= 0) throw std::runtime_error("cannot bind " + host);
    worker_ = std::thread([this] { http_->listen_after_bind(); });
    http_->wait_until_ready();
    return port;
}

void HttpApi::stop() {
    if (http_) http_->stop();
    if (worker_.joinable()) worker_.join();
}

}  // namespace gear::server
