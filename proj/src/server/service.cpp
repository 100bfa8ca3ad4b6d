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

#include "server/service.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "core/property.hpp"
#include "geo/weather_zone.hpp"
#include "proto/dsmr_time.hpp"

namespace gear::server {

namespace {

using core::Catalog;
using core::UnixSeconds;

constexpr const char* kWeatherZoneType = "weather-zone-query";
constexpr const char* kImportAppName = "batch-import";

std::string hex(const unsigned char* data, std::size_t len) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (std::size_t i = 0; i < len; ++i) {
        out.push_back(digits[data[i] >> 4]);
        out.push_back(digits[data[i] & 0xF]);
    }
    return out;
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += "\"\"";
        else quoted.push_back(c);
    }
    quoted.push_back('"');
    return quoted;
}

}  // namespace

std::string generate_token() {
    unsigned char buf[16];
    if (RAND_bytes(buf, sizeof buf) != 1) throw std::runtime_error("entropy source failed");
    return hex(buf, sizeof buf);
}

std::string token_hash(const std::string& token) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(token.data(), token.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("digest failed");
    return hex(digest, len);
}

Service::Service(Store& store, Options options) : store_(store), options_(std::move(options)) {
    if (options_.admin_token.empty())
        throw std::invalid_argument("an admin token must be configured");
    admin_token_hash_ = token_hash(options_.admin_token);
}

Principal Service::authenticate(const std::string& bearer_token) {
    if (bearer_token.empty()) throw ApiError(401, "unauthorized", "missing bearer token");
    const std::string hashed = token_hash(bearer_token);
    if (hashed == admin_token_hash_) return {Principal::kAdmin, 0};
    Principal p;
    bool found = false;
    store_.exec("SELECT principal, principal_id FROM session WHERE token_hash = ?1",
                [&](sqlite3_stmt* s) { Store::bind_text(s, 1, hashed); },
                [&](const Store::Row& r) {
                    found = true;
                    p.kind = r.text(0) == "device" ? Principal::kDevice : Principal::kAccount;
                    p.id = r.int64(1);
                });
    if (!found) throw ApiError(401, "unauthorized", "unknown token");
    return p;
}

void Service::require_admin(const Principal& p) {
    if (p.kind != Principal::kAdmin)
        throw ApiError(403, "forbidden", "admin credentials required");
}

std::int64_t Service::create_app(const Principal& p, const std::string& name) {
    require_admin(p);
    if (name.empty()) throw ApiError(400, "bad_request", "app name must not be empty");
    bool duplicate = false;
    store_.exec("SELECT 1 FROM app WHERE name = ?1",
                [&](sqlite3_stmt* s) { Store::bind_text(s, 1, name); },
                [&](const Store::Row&) { duplicate = true; });
    if (duplicate) throw ApiError(409, "duplicate_name", "an app with this name exists");
    store_.exec("INSERT INTO app (name) VALUES (?1)",
                [&](sqlite3_stmt* s) { Store::bind_text(s, 1, name); });
    return store_.last_insert_id();
}

std::int64_t Service::create_campaign(const Principal& p, std::int64_t app_id,
                                      const std::string& name,
                                      const std::vector<std::string>& data_source_list) {
    require_admin(p);
    bool app_exists = false;
    store_.exec("SELECT 1 FROM app WHERE app_id = ?1",
                [&](sqlite3_stmt* s) { Store::bind_int64(s, 1, app_id); },
                [&](const Store::Row&) { app_exists = true; });
    if (!app_exists) throw ApiError(404, "unknown_app", "no such app");
    for (const auto& type_name : data_source_list) {
        if (!Catalog::shipped().find(type_name))
            throw ApiError(400, "unknown_data_source_type",
                           "unknown data-source type '" + type_name + "'");
    }
    std::int64_t campaign_id = 0;
    store_.transaction([&] {
        store_.exec(
            "INSERT INTO campaign (app_id, name, overdue_multiplier) VALUES (?1, ?2, ?3)",
            [&](sqlite3_stmt* s) {
                Store::bind_int64(s, 1, app_id);
                Store::bind_text(s, 2, name);
                Store::bind_real(s, 3, options_.default_overdue_multiplier);
            });
        campaign_id = store_.last_insert_id();
        for (std::size_t i = 0; i < data_source_list.size(); ++i) {
            store_.exec(
                "INSERT INTO campaign_source (campaign_id, position, type_name) "
                "VALUES (?1, ?2, ?3)",
                [&](sqlite3_stmt* s) {
                    Store::bind_int64(s, 1, campaign_id);
                    Store::bind_int64(s, 2, static_cast<std::int64_t>(i));
                    Store::bind_text(s, 3, data_source_list[i]);
                });
        }
    });
    return campaign_id;
}

std::vector<std::string> Service::campaign_source_list(std::int64_t campaign_id) {
    std::vector<std::string> list;
    store_.exec(
        "SELECT type_name FROM campaign_source WHERE campaign_id = ?1 ORDER BY position",
        [&](sqlite3_stmt* s) { Store::bind_int64(s, 1, campaign_id); },
        [&](const Store::Row& r) { list.push_back(r.text(0)); });
    return list;
}

AccountCreation Service::create_account(const Principal& p, std::int64_t campaign_id,
                                        UnixSeconds now) {
    require_admin(p);
    bool exists = false;
    store_.exec("SELECT 1 FROM campaign WHERE campaign_id = ?1",
                [&](sqlite3_stmt* s) { Store::bind_int64(s, 1, campaign_id); },
                [&](const Store::Row&) { exists = true; });
    if (!exists) throw ApiError(404, "unknown_campaign", "no such campaign");

    AccountCreation out;
    out.activation_token = generate_token();
    const std::string hashed = token_hash(out.activation_token);
    store_.exec("INSERT INTO account (campaign_id, token_hash, created_at) VALUES (?1, ?2, ?3)",
                [&](sqlite3_stmt* s) {
                    Store::bind_int64(s, 1, campaign_id);
                    Store::bind_text(s, 2, hashed);
                    Store::bind_int64(s, 3, now);
                });
    out.account_id = store_.last_insert_id();
    return out;
}

AccountActivation Service::activate_account(const std::string& activation_token,
                                            UnixSeconds now) {
    const std::string hashed = token_hash(activation_token);
    AccountActivation out;
    store_.transaction([&] {
        std::int64_t account_id = -1;
        std::int64_t campaign_id = -1;
        store_.exec("SELECT account_id, campaign_id FROM account WHERE token_hash = ?1",
                    [&](sqlite3_stmt* s) { Store::bind_text(s, 1, hashed); },
                    [&](const Store::Row& r) {
                        account_id = r.int64(0);
                        campaign_id = r.int64(1);
                    });
        if (account_id < 0) {
            bool consumed = false;
            store_.exec("SELECT 1 FROM consumed_token WHERE token_hash = ?1",
                        [&](sqlite3_stmt* s) { Store::bind_text(s, 1, hashed); },
                        [&](const Store::Row&) { consumed = true; });
            if (consumed)
                throw ApiError(410, "token_consumed", "this activation token was already used");
            throw ApiError(401, "unknown_token", "unknown activation token");
        }

        const auto sources = campaign_source_list(campaign_id);
        if (sources.empty())
            throw ApiError(409, "campaign_not_activatable",
                           "the campaign declares no data sources");

        // single use: exactly one concurrent caller can null the hash
        const int changed = store_.exec(
            "UPDATE account SET token_hash = NULL, activated_at = ?2 "
            "WHERE account_id = ?1 AND token_hash IS NOT NULL",
            [&](sqlite3_stmt* s) {
                Store::bind_int64(s, 1, account_id);
                Store::bind_int64(s, 2, now);
            });
        if (changed != 1)
            throw ApiError(410, "token_consumed", "this activation token was already used");
        store_.exec("INSERT INTO consumed_token (token_hash) VALUES (?1)",
                    [&](sqlite3_stmt* s) { Store::bind_text(s, 1, hashed); });

        out.session_token = generate_token();
        store_.exec(
            "INSERT INTO session (token_hash, principal, principal_id, issued_at) "
            "VALUES (?1, 'account', ?2, ?3)",
            [&](sqlite3_stmt* s) {
                Store::bind_text(s, 1, token_hash(out.session_token));
                Store::bind_int64(s, 2, account_id);
                Store::bind_int64(s, 3, now);
            });
        out.account_id = account_id;
        out.campaign.campaign_id = campaign_id;
        store_.exec("SELECT name FROM campaign WHERE campaign_id = ?1",
                    [&](sqlite3_stmt* s) { Store::bind_int64(s, 1, campaign_id); },
                    [&](const Store::Row& r) { out.campaign.name = r.text(0); });
        out.campaign.data_source_list = sources;
    });
    return out;
}

std::int64_t Service::register_device(const Principal& p, const std::string& device_name,
                                      const std::string& type_name, const std::string& pop) {
    require_admin(p);
    const auto* type = Catalog::shipped().find(type_name);
    if (!type || type->variant != core::SourceVariant::kDeviceType)
        throw ApiError(400, "unknown_device_type", "unknown device type '" + type_name + "'");
    if (device_name.empty() || pop.empty())
        throw ApiError(400, "bad_request", "device name and proof of possession are required");
    bool duplicate = false;
    store_.exec("SELECT 1 FROM device WHERE device_name = ?1",
                [&](sqlite3_stmt* s) { Store::bind_text(s, 1, device_name); },
                [&](const Store::Row&) { duplicate = true; });
    if (duplicate) throw ApiError(409, "duplicate_device", "device name already registered");
    store_.exec("INSERT INTO device (device_name, type_name, pop_hash) VALUES (?1, ?2, ?3)",
                [&](sqlite3_stmt* s) {
                    Store::bind_text(s, 1, device_name);
                    Store::bind_text(s, 2, type_name);
                    Store::bind_text(s, 3, token_hash(pop));
                });
    return store_.last_insert_id();
}

std::int64_t Service::ensure_source(std::int64_t account_id, const std::string& type_name,
                                    const std::string& kind, UnixSeconds now) {
    std::int64_t source_id = -1;
    store_.exec("SELECT source_id FROM data_source WHERE account_id = ?1 AND type_name = ?2",
                [&](sqlite3_stmt* s) {
                    Store::bind_int64(s, 1, account_id);
                    Store::bind_text(s, 2, type_name);
                },
                [&](const Store::Row& r) { source_id = r.int64(0); });
    if (source_id >= 0) return source_id;
    store_.exec(
        "INSERT INTO data_source (account_id, type_name, kind, created_at) "
        "VALUES (?1, ?2, ?3, ?4)",
        [&](sqlite3_stmt* s) {
            Store::bind_int64(s, 1, account_id);
            Store::bind_text(s, 2, type_name);
            Store::bind_text(s, 3, kind);
            Store::bind_int64(s, 4, now);
        });
    return store_.last_insert_id();
}

DeviceActivation Service::activate_device(const Principal& p, const std::string& device_name,
                                          const std::string& pop, UnixSeconds now) {
    if (p.kind != Principal::kAccount)
        throw ApiError(403, "forbidden", "device activation requires an account session");

    DeviceActivation out;
    store_.transaction([&] {
        std::int64_t device_id = -1;
        std::string type_name, pop_hash;
        bool already_active = false;
        store_.exec(
            "SELECT device_id, type_name, pop_hash, activated_at IS NOT NULL FROM device "
            "WHERE device_name = ?1",
            [&](sqlite3_stmt* s) { Store::bind_text(s, 1, device_name); },
            [&](const Store::Row& r) {
                device_id = r.int64(0);
                type_name = r.text(1);
                pop_hash = r.text(2);
                already_active = r.int64(3) != 0;
            });
        if (device_id < 0) throw ApiError(404, "unknown_device", "no such device");
        if (pop_hash != token_hash(pop))
            throw ApiError(403, "wrong_pop", "proof of possession does not match");
        if (already_active)
            throw ApiError(409, "duplicate_activation", "device is already activated");

        std::int64_t campaign_id = -1;
        store_.exec("SELECT campaign_id FROM account WHERE account_id = ?1",
                    [&](sqlite3_stmt* s) { Store::bind_int64(s, 1, p.id); },
                    [&](const Store::Row& r) { campaign_id = r.int64(0); });
        const auto declared = campaign_source_list(campaign_id);
        if (std::find(declared.begin(), declared.end(), type_name) == declared.end())
            throw ApiError(409, "type_not_in_campaign",
                           "the campaign does not declare data source '" + type_name + "'");

        const int changed = store_.exec(
            "UPDATE device SET account_id = ?2, activated_at = ?3 "
            "WHERE device_id = ?1 AND activated_at IS NULL",
            [&](sqlite3_stmt* s) {
                Store::bind_int64(s, 1, device_id);
                Store::bind_int64(s, 2, p.id);
                Store::bind_int64(s, 3, now);
            });
        if (changed != 1)
            throw ApiError(409, "duplicate_activation", "device is already activated");

        ensure_source(p.id, type_name, "device", now);

        out.session_token = generate_token();
        store_.exec(
            "INSERT INTO session (token_hash, principal, principal_id, issued_at) "
            "VALUES (?1, 'device', ?2, ?3)",
            [&](sqlite3_stmt* s) {
                Store::bind_text(s, 1, token_hash(out.session_token));
                Store::bind_int64(s, 2, device_id);
                Store::bind_int64(s, 3, now);
            });
        out.device_id = device_id;
        out.type_name = type_name;
    });
    return out;
}

std::int64_t Service::ensure_property(const std::string& name, const std::string& unit,
                                      const std::string& format) {
    return store_.exec(
        "INSERT OR IGNORE INTO property (name, unit, format) VALUES (?1, ?2, ?3)",
        [&](sqlite3_stmt* s) {
            Store::bind_text(s, 1, name);
            Store::bind_text(s, 2, unit);
            Store::bind_text(s, 3, format);
        });
}

IngestCounts Service::ingest_upload(const Principal& p, const UploadBody& body) {
    if (p.kind != Principal::kDevice)
        throw ApiError(403, "forbidden", "uploads require a device session");
    if (body.measurements.empty())
        throw ApiError(400, "empty_upload", "an upload must carry measurements");

    std::int64_t account_id = -1;
    std::string type_name;
    store_.exec("SELECT account_id, type_name FROM device WHERE device_id = ?1",
                [&](sqlite3_stmt* s) { Store::bind_int64(s, 1, p.id); },
                [&](const Store::Row& r) {
                    account_id = r.is_null(0) ? -1 : r.int64(0);
                    type_name = r.text(1);
                });
    if (account_id < 0) throw ApiError(403, "forbidden", "device is not activated");
    const auto* type = Catalog::shipped().find(type_name);

    for (const auto& m : body.measurements) {
        const auto* desc = type->find_property(m.property);
        if (!desc)
            throw ApiError(400, "unknown_property",
                           "property '" + m.property + "' is not declared for " + type_name);
        if (m.time > body.upload_time)
            throw ApiError(400, "clock_fault",
                           "measurement time is later than the upload time");
        if (!core::value_matches_format(desc->value_format, m.value))
            throw ApiError(400, "bad_value", "value '" + m.value + "' does not match the " +
                                                 std::string(core::format_tag(desc->value_format)) +
                                                 " format of " + m.property);
    }

    IngestCounts counts;
    store_.transaction([&] {
        const std::int64_t source_id = ensure_source(account_id, type_name, "device",
                                                     body.upload_time);
        store_.exec(
            "INSERT INTO upload (source_id, upload_time, size, kind) VALUES (?1, ?2, ?3, "
            "'device')",
            [&](sqlite3_stmt* s) {
                Store::bind_int64(s, 1, source_id);
                Store::bind_int64(s, 2, body.upload_time);
                Store::bind_int64(s, 3, static_cast<std::int64_t>(body.measurements.size()));
            });
        const std::int64_t upload_id = store_.last_insert_id();
        for (const auto& m : body.measurements) {
            const auto* desc = type->find_property(m.property);
            ensure_property(m.property, desc->unit, core::format_tag(desc->value_format));
            const int changed = store_.exec(
                "INSERT OR IGNORE INTO measurement (source_id, property, time, value, "
                "upload_id) VALUES (?1, ?2, ?3, ?4, ?5)",
                [&](sqlite3_stmt* s) {
                    Store::bind_int64(s, 1, source_id);
                    Store::bind_text(s, 2, m.property);
                    Store::bind_int64(s, 3, m.time);
                    Store::bind_text(s, 4, m.value);
                    Store::bind_int64(s, 5, upload_id);
                });
            if (changed == 1)
                ++counts.stored;
            else
                ++counts.duplicates;
        }
    });
    return counts;
}

IngestCounts Service::ingest_energy_query(const Principal& p, const std::string& query_kind,
                                          const std::string& cell, const std::string& tz,
                                          UnixSeconds now) {
    if (p.kind != Principal::kAccount)
        throw ApiError(403, "forbidden", "energy queries require an account session");
    if (query_kind != "weather_zone")
        throw ApiError(400, "unknown_query_kind", "unknown query kind '" + query_kind + "'");

    std::int64_t campaign_id = -1;
    store_.exec("SELECT campaign_id FROM account WHERE account_id = ?1",
                [&](sqlite3_stmt* s) { Store::bind_int64(s, 1, p.id); },
                [&](const Store::Row& r) { campaign_id = r.int64(0); });
    const auto declared = campaign_source_list(campaign_id);
    if (std::find(declared.begin(), declared.end(), kWeatherZoneType) == declared.end())
        throw ApiError(409, "query_not_in_campaign",
                       "the campaign does not declare the weather-zone query");

    if (!geo::cell_center(cell).has_value())
        throw ApiError(400, "bad_cell", "not a resolution-4 cell id");
    if (!proto::timezone_known(tz))
        throw ApiError(400, "bad_timezone", "unknown timezone '" + tz + "'");

    IngestCounts counts;
    store_.transaction([&] {
        const std::int64_t source_id = ensure_source(p.id, kWeatherZoneType, "energy_query", now);
        store_.exec(
            "INSERT INTO upload (source_id, upload_time, size, kind) "
            "VALUES (?1, ?2, 2, 'energy_query')",
            [&](sqlite3_stmt* s) {
                Store::bind_int64(s, 1, source_id);
                Store::bind_int64(s, 2, now);
            });
        const std::int64_t upload_id = store_.last_insert_id();
        const core::Measurement rows[2] = {
            {"weather_zone_cell_id_str", now, cell},
            {"weather_zone_timezone_str", now, tz},
        };
        for (const auto& m : rows) {
            ensure_property(m.property, "n/a", "%s");
            const int changed = store_.exec(
                "INSERT OR IGNORE INTO measurement (source_id, property, time, value, "
                "upload_id) VALUES (?1, ?2, ?3, ?4, ?5)",
                [&](sqlite3_stmt* s) {
                    Store::bind_int64(s, 1, source_id);
                    Store::bind_text(s, 2, m.property);
                    Store::bind_int64(s, 3, m.time);
                    Store::bind_text(s, 4, m.value);
                    Store::bind_int64(s, 5, upload_id);
                });
            if (changed == 1)
                ++counts.stored;
            else
                ++counts.duplicates;
        }
    });
    return counts;
}

std::int64_t Service::activate_cloud_feed(const Principal& p, const std::string& feed_type,
                                          UnixSeconds now) {
    if (p.kind != Principal::kAccount)
        throw ApiError(403, "forbidden", "cloud-feed activation requires an account session");
    const auto* type = Catalog::shipped().find(feed_type);
    if (!type || type->variant != core::SourceVariant::kCloudFeed)
        throw ApiError(400, "unknown_feed", "unknown cloud feed '" + feed_type + "'");

    std::int64_t campaign_id = -1;
    store_.exec("SELECT campaign_id FROM account WHERE account_id = ?1",
                [&](sqlite3_stmt* s) { Store::bind_int64(s, 1, p.id); },
                [&](const Store::Row& r) { campaign_id = r.int64(0); });
    const auto declared = campaign_source_list(campaign_id);
    if (std::find(declared.begin(), declared.end(), feed_type) == declared.end())
        throw ApiError(409, "feed_not_in_campaign",
                       "the campaign does not declare cloud feed '" + feed_type + "'");

    std::int64_t auth_id = 0;
    store_.transaction([&] {
        // at most one active authorization per (account, feed)
        store_.exec("DELETE FROM cloud_feed_auth WHERE account_id = ?1 AND feed_type = ?2",
                    [&](sqlite3_stmt* s) {
                        Store::bind_int64(s, 1, p.id);
                        Store::bind_text(s, 2, feed_type);
                    });
        store_.exec(
            "INSERT INTO cloud_feed_auth (account_id, feed_type, authorized_at) "
            "VALUES (?1, ?2, ?3)",
            [&](sqlite3_stmt* s) {
                Store::bind_int64(s, 1, p.id);
                Store::bind_text(s, 2, feed_type);
                Store::bind_int64(s, 3, now);
            });
        auth_id = store_.last_insert_id();
        ensure_source(p.id, feed_type, "cloud_feed", now);
    });
    return auth_id;
}

std::vector<AccountStatus> Service::data_source_status(const Principal& p,
                                                       std::optional<std::int64_t> campaign_id,
                                                       UnixSeconds now) {
    if (p.kind == Principal::kDevice)
        throw ApiError(403, "forbidden", "status requires an account or admin session");

    struct AccountRow {
        std::int64_t account_id;
        std::int64_t campaign;
        std::optional<UnixSeconds> activated_at;
        double multiplier;
    };
    std::vector<AccountRow> accounts;
    std::string sql =
        "SELECT a.account_id, a.campaign_id, a.activated_at, c.overdue_multiplier "
        "FROM account a JOIN campaign c ON c.campaign_id = a.campaign_id "
        "WHERE a.import_label IS NULL";
    if (p.kind == Principal::kAccount) sql += " AND a.account_id = " + std::to_string(p.id);
    if (campaign_id) sql += " AND a.campaign_id = " + std::to_string(*campaign_id);
    sql += " ORDER BY a.account_id";
    store_.exec(sql, {}, [&](const Store::Row& r) {
        accounts.push_back({r.int64(0), r.int64(1),
                            r.is_null(2) ? std::nullopt : std::optional<UnixSeconds>(r.int64(2)),
                            r.real(3)});
    });

    std::vector<AccountStatus> out;
    for (const auto& account : accounts) {
        AccountStatus status;
        status.account_id = account.account_id;
        status.activated_at = account.activated_at;
        for (const auto& type_name : campaign_source_list(account.campaign)) {
            const auto* type = Catalog::shipped().find(type_name);
            SourceStatus src;
            src.type_name = type_name;
            src.kind = type ? type->variant : core::SourceVariant::kDeviceType;
            src.expected_interval =
                (src.kind == core::SourceVariant::kDeviceType) ? type->upload_interval : 0;

            std::int64_t source_id = -1;
            store_.exec(
                "SELECT source_id FROM data_source WHERE account_id = ?1 AND type_name = ?2",
                [&](sqlite3_stmt* s) {
                    Store::bind_int64(s, 1, account.account_id);
                    Store::bind_text(s, 2, type_name);
                },
                [&](const Store::Row& r) { source_id = r.int64(0); });

            std::optional<UnixSeconds> device_activated_at;
            if (src.kind == core::SourceVariant::kDeviceType) {
                store_.exec(
                    "SELECT activated_at FROM device WHERE account_id = ?1 AND type_name = ?2 "
                    "AND activated_at IS NOT NULL ORDER BY activated_at LIMIT 1",
                    [&](sqlite3_stmt* s) {
                        Store::bind_int64(s, 1, account.account_id);
                        Store::bind_text(s, 2, type_name);
                    },
                    [&](const Store::Row& r) { device_activated_at = r.int64(0); });
                src.activated = device_activated_at.has_value();
            }

            if (source_id >= 0) {
                store_.exec("SELECT MAX(time), MIN(CASE WHEN property = 'heartbeat__0' THEN "
                            "time END) FROM measurement WHERE source_id = ?1",
                            [&](sqlite3_stmt* s) { Store::bind_int64(s, 1, source_id); },
                            [&](const Store::Row& r) {
                                if (!r.is_null(0)) src.latest_measurement_time = r.int64(0);
                                if (!r.is_null(1)) src.first_heartbeat_time = r.int64(1);
                            });
                if (src.kind != core::SourceVariant::kDeviceType)
                    src.activated = src.latest_measurement_time.has_value() ||
                                    src.kind == core::SourceVariant::kCloudFeed;
            }

            if (src.latest_measurement_time && src.expected_interval > 0)
                src.next_expected_time = *src.latest_measurement_time + src.expected_interval;

            // a device source is overdue when more than multiplier x interval
            // has passed since its last measurement (or since activation when
            // it never reported)
            if (src.kind == core::SourceVariant::kDeviceType && src.expected_interval > 0) {
                std::optional<UnixSeconds> reference = src.latest_measurement_time;
                if (!reference) reference = device_activated_at;
                if (reference) {
                    const auto grace = static_cast<UnixSeconds>(
                        account.multiplier * static_cast<double>(src.expected_interval));
                    src.overdue = now > *reference + grace;
                }
            }
            status.sources.push_back(std::move(src));
        }
        out.push_back(std::move(status));
    }
    return out;
}

IngestCounts Service::import_batch(const Principal& p, const std::vector<ImportRow>& rows,
                                   UnixSeconds now) {
    require_admin(p);
    for (const auto& row : rows) {
        if (!core::validate_property_name(row.property).acceptable())
            throw ApiError(400, "bad_property_name",
                           "invalid property name '" + row.property + "'");
        if (row.account_label.empty() || row.source_type.empty())
            throw ApiError(400, "bad_request", "import rows need an account and a source");
    }

    IngestCounts counts;
    store_.transaction([&] {
        // the import campaign exists lazily, one per store
        std::int64_t app_id = -1;
        store_.exec("SELECT app_id FROM app WHERE name = ?1",
                    [&](sqlite3_stmt* s) { Store::bind_text(s, 1, kImportAppName); },
                    [&](const Store::Row& r) { app_id = r.int64(0); });
        if (app_id < 0) {
            store_.exec("INSERT INTO app (name) VALUES (?1)",
                        [&](sqlite3_stmt* s) { Store::bind_text(s, 1, kImportAppName); });
            app_id = store_.last_insert_id();
        }
        std::int64_t campaign_id = -1;
        store_.exec("SELECT campaign_id FROM campaign WHERE app_id = ?1 AND name = ?2",
                    [&](sqlite3_stmt* s) {
                        Store::bind_int64(s, 1, app_id);
                        Store::bind_text(s, 2, kImportAppName);
                    },
                    [&](const Store::Row& r) { campaign_id = r.int64(0); });
        if (campaign_id < 0) {
            store_.exec(
                "INSERT INTO campaign (app_id, name, overdue_multiplier) VALUES (?1, ?2, 2.0)",
                [&](sqlite3_stmt* s) {
                    Store::bind_int64(s, 1, app_id);
                    Store::bind_text(s, 2, kImportAppName);
                });
            campaign_id = store_.last_insert_id();
        }

        std::map<std::string, std::int64_t> label_to_account;
        std::map<std::pair<std::int64_t, std::string>, std::int64_t> source_ids;
        std::map<std::int64_t, std::int64_t> upload_ids;  // per source

        for (const auto& row : rows) {
            auto acc_it = label_to_account.find(row.account_label);
            if (acc_it == label_to_account.end()) {
                std::int64_t account_id = -1;
                store_.exec(
                    "SELECT account_id FROM account WHERE import_label = ?1 AND campaign_id = ?2",
                    [&](sqlite3_stmt* s) {
                        Store::bind_text(s, 1, row.account_label);
                        Store::bind_int64(s, 2, campaign_id);
                    },
                    [&](const Store::Row& r) { account_id = r.int64(0); });
                if (account_id < 0) {
                    store_.exec(
                        "INSERT INTO account (campaign_id, created_at, activated_at, "
                        "import_label) VALUES (?1, ?2, ?2, ?3)",
                        [&](sqlite3_stmt* s) {
                            Store::bind_int64(s, 1, campaign_id);
                            Store::bind_int64(s, 2, now);
                            Store::bind_text(s, 3, row.account_label);
                        });
                    account_id = store_.last_insert_id();
                }
                acc_it = label_to_account.emplace(row.account_label, account_id).first;
            }

            const auto src_key = std::make_pair(acc_it->second, row.source_type);
            auto src_it = source_ids.find(src_key);
            if (src_it == source_ids.end()) {
                const std::int64_t source_id =
                    ensure_source(acc_it->second, row.source_type, "batch_import", now);
                src_it = source_ids.emplace(src_key, source_id).first;
            }

            auto up_it = upload_ids.find(src_it->second);
            if (up_it == upload_ids.end()) {
                store_.exec(
                    "INSERT INTO upload (source_id, upload_time, size, kind) "
                    "VALUES (?1, ?2, 0, 'import')",
                    [&](sqlite3_stmt* s) {
                        Store::bind_int64(s, 1, src_it->second);
                        Store::bind_int64(s, 2, now);
                    });
                up_it = upload_ids.emplace(src_it->second, store_.last_insert_id()).first;
            }

            const auto* known = Catalog::shipped().find_property(row.property);
            ensure_property(row.property, known ? known->unit : row.unit,
                            known ? core::format_tag(known->value_format) : "%s");
            const int changed = store_.exec(
                "INSERT OR IGNORE INTO measurement (source_id, property, time, value, "
                "upload_id) VALUES (?1, ?2, ?3, ?4, ?5)",
                [&](sqlite3_stmt* s) {
                    Store::bind_int64(s, 1, src_it->second);
                    Store::bind_text(s, 2, row.property);
                    Store::bind_int64(s, 3, row.time);
                    Store::bind_text(s, 4, row.value);
                    Store::bind_int64(s, 5, up_it->second);
                });
            if (changed == 1)
                ++counts.stored;
            else
                ++counts.duplicates;
        }
        // record how many rows each import upload actually carried
        for (const auto& [source_id, upload_id] : upload_ids) {
            store_.exec(
                "UPDATE upload SET size = (SELECT COUNT(*) FROM measurement WHERE upload_id "
                "= ?1) WHERE upload_id = ?1",
                [&](sqlite3_stmt* s) { Store::bind_int64(s, 1, upload_id); });
            (void)source_id;
        }
    });
    return counts;
}

std::string Service::export_measurements(const Principal& p,
                                         std::optional<std::int64_t> campaign_id,
                                         std::optional<std::int64_t> account_id,
                                         std::optional<UnixSeconds> from,
                                         std::optional<UnixSeconds> to) {
    require_admin(p);
    if (campaign_id) {
        bool exists = false;
        store_.exec("SELECT 1 FROM campaign WHERE campaign_id = " + std::to_string(*campaign_id),
                    {}, [&](const Store::Row&) { exists = true; });
        if (!exists) throw ApiError(404, "unknown_campaign", "no such campaign");
    }

    std::string sql =
        "SELECT COALESCE(a.import_label, CAST(a.account_id AS TEXT)), d.type_name, "
        "m.property, p.unit, m.time, m.value "
        "FROM measurement m "
        "JOIN data_source d ON d.source_id = m.source_id "
        "JOIN account a ON a.account_id = d.account_id "
        "JOIN property p ON p.name = m.property WHERE 1=1";
    if (campaign_id) sql += " AND a.campaign_id = " + std::to_string(*campaign_id);
    if (account_id) sql += " AND a.account_id = " + std::to_string(*account_id);
    if (from) sql += " AND m.time >= " + std::to_string(*from);
    if (to) sql += " AND m.time < " + std::to_string(*to);
    sql += " ORDER BY m.time, 1, d.type_name, m.property";

    std::ostringstream csv;
    csv << "account,source,property,unit,time_unix,value\r\n";
    store_.exec(sql, {}, [&](const Store::Row& r) {
        csv << csv_field(r.text(0)) << ',' << csv_field(r.text(1)) << ',' << csv_field(r.text(2))
            << ',' << csv_field(r.text(3)) << ',' << r.int64(4) << ',' << csv_field(r.text(5))
            << "\r\n";
    });
    return csv.str();
}

std::vector<CampaignInfo> Service::list_campaigns(const Principal& p) {
    require_admin(p);
    std::vector<CampaignInfo> out;
    store_.exec("SELECT campaign_id, app_id, name FROM campaign ORDER BY campaign_id", {},
                [&](const Store::Row& r) {
                    out.push_back({r.int64(0), r.int64(1), r.text(2), {}});
                });
    for (auto& c : out) c.data_source_list = campaign_source_list(c.campaign_id);
    return out;
}

std::vector<AccountInfo> Service::list_accounts(const Principal& p,
                                                std::optional<std::int64_t> campaign_id) {
    require_admin(p);
    std::string sql =
        "SELECT account_id, campaign_id, activated_at IS NOT NULL FROM account "
        "WHERE import_label IS NULL";
    if (campaign_id) sql += " AND campaign_id = " + std::to_string(*campaign_id);
    sql += " ORDER BY account_id";
    std::vector<AccountInfo> out;
    store_.exec(sql, {}, [&](const Store::Row& r) {
        out.push_back({r.int64(0), r.int64(1), r.int64(2) != 0});
    });
    return out;
}

}  // namespace gear::server
