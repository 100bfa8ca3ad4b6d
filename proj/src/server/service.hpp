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

#ifndef GEAR_SERVER_SERVICE_HPP
#define GEAR_SERVER_SERVICE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/catalog.hpp"
#include "core/types.hpp"
#include "server/store.hpp"

namespace gear::server {

/// Request rejection carrying the HTTP status it maps to.
class ApiError : public std::runtime_error {
   public:
    ApiError(int status, std::string code, const std::string& message)
        : std::runtime_error(message), status_(status), code_(std::move(code)) {}
    int status() const { return status_; }
    const std::string& code() const { return code_; }

   private:
    int status_;
    std::string code_;
};

struct Principal {
    enum Kind { kAdmin, kAccount, kDevice } kind = kAccount;
    std::int64_t id = 0;  // account_id or device_id
};

struct CampaignDescriptor {
    std::int64_t campaign_id = 0;
    std::string name;
    std::vector<std::string> data_source_list;
};

struct AccountCreation {
    std::int64_t account_id = 0;
    std::string activation_token;  // plaintext, returned exactly once
};

struct AccountActivation {
    std::string session_token;
    std::int64_t account_id = 0;
    CampaignDescriptor campaign;
};

struct DeviceActivation {
    std::string session_token;
    std::int64_t device_id = 0;
    std::string type_name;
};

struct IngestCounts {
    std::int64_t stored = 0;
    std::int64_t duplicates = 0;
};

struct UploadBody {
    core::UnixSeconds upload_time = 0;
    std::vector<core::Measurement> measurements;
};

struct SourceStatus {
    std::string type_name;
    core::SourceVariant kind = core::SourceVariant::kDeviceType;
    bool activated = false;  // device bound / query answered / feed authorized
    std::optional<core::UnixSeconds> latest_measurement_time;
    std::optional<core::UnixSeconds> next_expected_time;
    core::Seconds expected_interval = 0;
    bool overdue = false;
    std::optional<core::UnixSeconds> first_heartbeat_time;
};

struct AccountStatus {
    std::int64_t account_id = 0;
    std::optional<core::UnixSeconds> activated_at;
    std::vector<SourceStatus> sources;
};

struct ImportRow {
    std::string account_label;
    std::string source_type;
    std::string property;
    std::string unit;
    core::UnixSeconds time = 0;
    std::string value;
};

struct CampaignInfo {
    std::int64_t campaign_id = 0;
    std::int64_t app_id = 0;
    std::string name;
    std::vector<std::string> data_source_list;
};

struct AccountInfo {
    std::int64_t account_id = 0;
    std::int64_t campaign_id = 0;
    bool activated = false;
};

/// Campaign/measurement service: pseudonymous account lifecycle, device and
/// query provisioning, idempotent ingestion, and data-health reporting.
/// All methods are safe for concurrent use; persistence mutations run in
/// store transactions.
class Service {
   public:
    struct Options {
        std::string admin_token;
        double default_overdue_multiplier = 2.0;
    };

    Service(Store& store, Options options);

    /// Bearer-token resolution; throws 401 ApiError for unknown tokens.
    Principal authenticate(const std::string& bearer_token);

    std::int64_t create_app(const Principal& p, const std::string& name);
    std::int64_t create_campaign(const Principal& p, std::int64_t app_id, const std::string& name,
                                 const std::vector<std::string>& data_source_list);
    AccountCreation create_account(const Principal& p, std::int64_t campaign_id,
                                   core::UnixSeconds now);
    AccountActivation activate_account(const std::string& activation_token, core::UnixSeconds now);

    std::int64_t register_device(const Principal& p, const std::string& device_name,
                                 const std::string& type_name, const std::string& pop);
    DeviceActivation activate_device(const Principal& p, const std::string& device_name,
                                     const std::string& pop, core::UnixSeconds now);

    IngestCounts ingest_upload(const Principal& p, const UploadBody& body);
    IngestCounts ingest_energy_query(const Principal& p, const std::string& query_kind,
                                     const std::string& cell, const std::string& tz,
                                     core::UnixSeconds now);
    std::int64_t activate_cloud_feed(const Principal& p, const std::string& feed_type,
                                     core::UnixSeconds now);

    std::vector<AccountStatus> data_source_status(const Principal& p,
                                                  std::optional<std::int64_t> campaign_id,
                                                  core::UnixSeconds now);

    IngestCounts import_batch(const Principal& p, const std::vector<ImportRow>& rows,
                              core::UnixSeconds now);
    /// RFC-4180 CSV with header account,source,property,unit,time_unix,value,
    /// ordered by (time, account, source, property); byte-stable on
    /// unchanged data.
    std::string export_measurements(const Principal& p, std::optional<std::int64_t> campaign_id,
                                    std::optional<std::int64_t> account_id,
                                    std::optional<core::UnixSeconds> from,
                                    std::optional<core::UnixSeconds> to);

    std::vector<CampaignInfo> list_campaigns(const Principal& p);
    std::vector<AccountInfo> list_accounts(const Principal& p,
                                           std::optional<std::int64_t> campaign_id);

    Store& store() { return store_; }

   private:
    void require_admin(const Principal& p);
    std::int64_t ensure_property(const std::string& name, const std::string& unit,
                                 const std::string& format);
    std::int64_t ensure_source(std::int64_t account_id, const std::string& type_name,
                               const std::string& kind, core::UnixSeconds now);
    std::vector<std::string> campaign_source_list(std::int64_t campaign_id);

    Store& store_;
    Options options_;
    std::string admin_token_hash_;
};

/// 128-bit random token, lowercase hex.
std::string generate_token();
/// Hex SHA-256; the only form in which secrets touch the store.
std::string token_hash(const std::string& token);

}  // namespace gear::server

#endif  // GEAR_SERVER_SERVICE_HPP
