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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

#include "server/service.hpp"
#include "server/store.hpp"

using namespace gear::server;
using gear::core::Measurement;
using gear::core::UnixSeconds;

namespace {

constexpr const char* kAdminToken = "test-admin-token";
constexpr UnixSeconds kT0 = 1735689600;  // 2025-01-01T00:00:00Z

struct Fixture {
    Store store{":memory:"};
    Service service{store, {kAdminToken, 2.0}};
    Principal admin{Principal::kAdmin, 0};

    std::int64_t app = 0;
    std::int64_t campaign = 0;

    Fixture() {
        app = service.create_app(admin, "NeedForHeat GearUp");
        campaign = service.create_campaign(
            admin, app, "residential-study",
            {"smart-meter-module", "living-room-module", "opentherm-monitor",
             "weather-zone-query", "enelogic-stub"});
    }

    AccountActivation make_account() {
        const auto created = service.create_account(admin, campaign, kT0);
        return service.activate_account(created.activation_token, kT0);
    }

    DeviceActivation make_device(const AccountActivation& account, const std::string& name,
                                 const std::string& type) {
        service.register_device(admin, name, type, "pop-" + name);
        const auto principal = service.authenticate(account.session_token);
        return service.activate_device(principal, name, "pop-" + name, kT0);
    }
};

}  // namespace

TEST_CASE("apps: creation, duplicate names, auth gate") {
    Fixture f;
    CHECK_THROWS_AS(f.service.create_app(Principal{Principal::kAccount, 1}, "x"), ApiError);
    CHECK_THROWS_AS(f.service.create_app(f.admin, "NeedForHeat GearUp"), ApiError);
    CHECK(f.service.create_app(f.admin, "another") > 0);
}

TEST_CASE("campaigns: unknown types rejected, empty list not activatable") {
    Fixture f;
    CHECK_THROWS_AS(f.service.create_campaign(f.admin, f.app, "bad", {"frobnicator"}), ApiError);
    CHECK_THROWS_AS(f.service.create_campaign(f.admin, 999, "bad", {}), ApiError);

    const auto empty = f.service.create_campaign(f.admin, f.app, "empty", {});
    const auto created = f.service.create_account(f.admin, empty, kT0);
    CHECK_THROWS_WITH_AS(f.service.activate_account(created.activation_token, kT0),
                         "the campaign declares no data sources", ApiError);
}

TEST_CASE("account activation: single use, campaign details returned") {
    Fixture f;
    const auto created = f.service.create_account(f.admin, f.campaign, kT0);
    CHECK(created.activation_token.size() == 32);  // 128-bit hex

    const auto activated = f.service.activate_account(created.activation_token, kT0);
    CHECK(activated.account_id == created.account_id);
    CHECK(activated.campaign.data_source_list.size() == 5);
    CHECK(activated.campaign.data_source_list[0] == "smart-meter-module");

    // consumed: the same token never authenticates again
    CHECK_THROWS_AS(f.service.activate_account(created.activation_token, kT0), ApiError);
    // random strings are unknown
    CHECK_THROWS_AS(f.service.activate_account("deadbeefdeadbeefdeadbeefdeadbeef", kT0),
                    ApiError);
}

TEST_CASE("token single-use holds under 16 concurrent activations") {
    Fixture f;
    const auto created = f.service.create_account(f.admin, f.campaign, kT0);
    std::atomic<int> winners{0}, losers{0};
    std::vector<std::thread> threads;
    threads.reserve(16);
    for (int i = 0; i < 16; ++i) {
        threads.emplace_back([&] {
            try {
                f.service.activate_account(created.activation_token, kT0);
                ++winners;
            } catch (const ApiError&) {
                ++losers;
            }
        });
    }
    for (auto& t : threads) t.join();
    CHECK(winners.load() == 1);
    CHECK(losers.load() == 15);
}

TEST_CASE("device activation: pop check, duplicate rejection") {
    Fixture f;
    const auto account = f.make_account();
    const auto principal = f.service.authenticate(account.session_token);

    f.service.register_device(f.admin, "smart-meter-module-a1b2c3", "smart-meter-module",
                              "correct-pop");

    CHECK_THROWS_AS(f.service.activate_device(principal, "no-such-device", "x", kT0), ApiError);
    CHECK_THROWS_AS(
        f.service.activate_device(principal, "smart-meter-module-a1b2c3", "wrong-pop", kT0),
        ApiError);

    const auto device =
        f.service.activate_device(principal, "smart-meter-module-a1b2c3", "correct-pop", kT0);
    CHECK(device.device_id > 0);

    // second activation attempt is a duplicate, even with the right pop
    CHECK_THROWS_WITH_AS(
        f.service.activate_device(principal, "smart-meter-module-a1b2c3", "correct-pop", kT0),
        "device is already activated", ApiError);
}

TEST_CASE("upload ingestion: idempotent by (source, property, time)") {
    Fixture f;
    const auto account = f.make_account();
    const auto device = f.make_device(account, "living-room-module-0001", "living-room-module");
    const auto dev = f.service.authenticate(device.session_token);

    UploadBody body;
    body.upload_time = kT0 + 6 * 3600;
    for (int i = 0; i < 36; ++i) {
        body.measurements.push_back(
            Measurement{"co2__ppm", kT0 + 600 * i, std::to_string(400 + i)});
    }
    const auto first = f.service.ingest_upload(dev, body);
    CHECK(first.stored == 36);
    CHECK(first.duplicates == 0);

    const auto retry = f.service.ingest_upload(dev, body);
    CHECK(retry.stored == 0);
    CHECK(retry.duplicates == 36);

    // unknown property for this device type
    UploadBody bad;
    bad.upload_time = kT0 + 600;
    bad.measurements.push_back(Measurement{"boilerSupplyTemp", kT0, "55.00"});
    CHECK_THROWS_WITH_AS(f.service.ingest_upload(dev, bad),
                         "property 'boilerSupplyTemp' is not declared for living-room-module",
                         ApiError);

    // upload_time earlier than a contained measurement indicates a clock fault
    UploadBody skewed;
    skewed.upload_time = kT0 - 600;
    skewed.measurements.push_back(Measurement{"co2__ppm", kT0, "400"});
    CHECK_THROWS_AS(f.service.ingest_upload(dev, skewed), ApiError);

    // values are checked against the property's format
    UploadBody malformed;
    malformed.upload_time = kT0 + 600;
    malformed.measurements.push_back(Measurement{"co2__ppm", kT0, "not-a-number"});
    CHECK_THROWS_AS(f.service.ingest_upload(dev, malformed), ApiError);

    UploadBody empty;
    empty.upload_time = kT0;
    CHECK_THROWS_AS(f.service.ingest_upload(dev, empty), ApiError);
}

TEST_CASE("upload idempotency under adversarial replay") {
    Fixture f;
    const auto account = f.make_account();
    const auto device = f.make_device(account, "living-room-module-0002", "living-room-module");
    const auto dev = f.service.authenticate(device.session_token);

    // 12 uploads of 24 measurements with heavy overlap, replayed shuffled
    // from 4 threads concurrently
    std::vector<UploadBody> uploads;
    for (int u = 0; u < 12; ++u) {
        UploadBody b;
        b.upload_time = kT0 + 86400;
        for (int i = 0; i < 24; ++i) {
            const int tick = u * 6 + i;  // overlapping windows
            b.measurements.push_back(
                Measurement{"temp_indoor__degC", kT0 + 600 * tick, "20.0"});
        }
        uploads.push_back(std::move(b));
    }
    std::atomic<std::int64_t> stored{0}, duplicates{0};
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] {
            for (std::size_t u = 0; u < uploads.size(); ++u) {
                const auto& body = uploads[(u * 7 + t * 3) % uploads.size()];
                const auto counts = f.service.ingest_upload(dev, body);
                stored += counts.stored;
                duplicates += counts.duplicates;
            }
        });
    }
    for (auto& t : threads) t.join();

    // the stored set equals the union of all distinct (property, time) keys
    std::int64_t rows = 0;
    f.store.exec("SELECT COUNT(*) FROM measurement WHERE property='temp_indoor__degC'", {},
                 [&](const Store::Row& r) { rows = r.int64(0); });
    CHECK(rows == 11 * 6 + 24);  // ticks 0 .. 90
    CHECK(stored.load() == rows);
    CHECK(stored.load() + duplicates.load() == 4 * 12 * 24);
}

TEST_CASE("energy query: schema guard rejects coordinates") {
    Fixture f;
    const auto account = f.make_account();
    const auto principal = f.service.authenticate(account.session_token);

    const auto counts = f.service.ingest_energy_query(principal, "weather_zone",
                                                      "8419699ffffffff", "Europe/Amsterdam", kT0);
    CHECK(counts.stored == 2);

    CHECK_THROWS_AS(f.service.ingest_energy_query(principal, "weather_zone", "not-a-cell",
                                                  "Europe/Amsterdam", kT0),
                    ApiError);
    CHECK_THROWS_AS(f.service.ingest_energy_query(principal, "weather_zone", "8419699ffffffff",
                                                  "Mars/Olympus", kT0),
                    ApiError);
    CHECK_THROWS_AS(
        f.service.ingest_energy_query(principal, "building_signature", "x", "y", kT0), ApiError);
}

TEST_CASE("cloud feed: single active authorization per account and feed") {
    Fixture f;
    const auto account = f.make_account();
    const auto principal = f.service.authenticate(account.session_token);

    const auto first = f.service.activate_cloud_feed(principal, "enelogic-stub", kT0);
    const auto second = f.service.activate_cloud_feed(principal, "enelogic-stub", kT0 + 60);
    CHECK(second != first);
    std::int64_t rows = 0;
    f.store.exec("SELECT COUNT(*) FROM cloud_feed_auth", {},
                 [&](const Store::Row& r) { rows = r.int64(0); });
    CHECK(rows == 1);

    CHECK_THROWS_AS(f.service.activate_cloud_feed(principal, "unknown-feed", kT0), ApiError);
}

TEST_CASE("status: overdue rule at 2x the expected interval") {
    Fixture f;
    const auto account = f.make_account();
    const auto device = f.make_device(account, "smm-0001", "smart-meter-module");
    const auto dev = f.service.authenticate(device.session_token);
    const auto principal = f.service.authenticate(account.session_token);

    UploadBody body;
    body.upload_time = kT0 + 600;
    body.measurements.push_back(Measurement{"heartbeat__0", kT0 + 600, "1"});
    f.service.ingest_upload(dev, body);

    auto source_status = [&](UnixSeconds now, const std::string& type) {
        const auto statuses = f.service.data_source_status(principal, {}, now);
        REQUIRE(statuses.size() == 1);
        for (const auto& s : statuses[0].sources)
            if (s.type_name == type) return s;
        FAIL("source not found");
        return SourceStatus{};
    };

    // upload interval 6 h: fine after 5 min, overdue only past 12 h
    auto fresh = source_status(kT0 + 900, "smart-meter-module");
    CHECK(!fresh.overdue);
    CHECK(fresh.latest_measurement_time == kT0 + 600);
    CHECK(fresh.next_expected_time == kT0 + 600 + 6 * 3600);

    CHECK(!source_status(kT0 + 600 + 12 * 3600, "smart-meter-module").overdue);
    CHECK(source_status(kT0 + 600 + 12 * 3600 + 1, "smart-meter-module").overdue);

    // a device that never reported: overdue counts from its activation
    const auto lrm = f.make_device(account, "lrm-0001", "living-room-module");
    (void)lrm;
    CHECK(!source_status(kT0 + 12 * 3600, "living-room-module").overdue);
    CHECK(source_status(kT0 + 12 * 3600 + 1, "living-room-module").overdue);

    // never-activated source: listed, not overdue, not activated
    const auto otm = source_status(kT0 + 48 * 3600, "opentherm-monitor");
    CHECK(!otm.activated);
    CHECK(!otm.overdue);
}

TEST_CASE("export: deterministic CSV, import round-trips") {
    Fixture f;
    const auto account = f.make_account();
    const auto device = f.make_device(account, "smm-0002", "smart-meter-module");
    const auto dev = f.service.authenticate(device.session_token);

    UploadBody body;
    body.upload_time = kT0 + 1200;
    body.measurements.push_back(Measurement{"e_use_hi_cum__kWh", kT0, "100.000"});
    body.measurements.push_back(Measurement{"e_use_hi_cum__kWh", kT0 + 600, "100.100"});
    body.measurements.push_back(Measurement{"meter_code_str", kT0, "ISK5\\2M550T-1012"});
    f.service.ingest_upload(dev, body);

    const auto csv1 = f.service.export_measurements(f.admin, f.campaign, {}, {}, {});
    const auto csv2 = f.service.export_measurements(f.admin, f.campaign, {}, {}, {});
    CHECK(csv1 == csv2);
    CHECK(csv1.find("account,source,property,unit,time_unix,value\r\n") == 0);
    CHECK(csv1.find("e_use_hi_cum__kWh,kWh," + std::to_string(kT0) + ",100.000") !=
          std::string::npos);

    // empty time range -> header only
    const auto empty = f.service.export_measurements(f.admin, f.campaign, {}, kT0 + 9000,
                                                     kT0 + 9001);
    CHECK(empty == "account,source,property,unit,time_unix,value\r\n");
    CHECK_THROWS_AS(f.service.export_measurements(f.admin, 12345, {}, {}, {}), ApiError);

    // import into a fresh store; its export reproduces the rows
    Store fresh_store{":memory:"};
    Service fresh{fresh_store, {kAdminToken, 2.0}};
    std::vector<ImportRow> rows;
    std::istringstream in(csv1);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ImportRow row;
        std::istringstream ls(line);
        std::string time;
        std::getline(ls, row.account_label, ',');
        std::getline(ls, row.source_type, ',');
        std::getline(ls, row.property, ',');
        std::getline(ls, row.unit, ',');
        std::getline(ls, time, ',');
        std::getline(ls, row.value);
        row.time = std::stoll(time);
        rows.push_back(std::move(row));
    }
    const auto imported = fresh.import_batch(fresh.authenticate(kAdminToken), rows, kT0 + 9999);
    CHECK(imported.stored == 3);
    const auto reexport = fresh.export_measurements(fresh.authenticate(kAdminToken), {}, {}, {}, {});
    CHECK(reexport == csv1);

    // re-import stores nothing new
    const auto again = fresh.import_batch(fresh.authenticate(kAdminToken), rows, kT0 + 10000);
    CHECK(again.stored == 0);
    CHECK(again.duplicates == 3);

    // invalid property names are rejected with no partial effect
    std::vector<ImportRow> bad = rows;
    bad[1].property = "temp outdoor";
    CHECK_THROWS_AS(fresh.import_batch(fresh.authenticate(kAdminToken), bad, kT0), ApiError);
}

TEST_CASE("pseudonymity audit: fixture identifiers never reach the store") {
    Fixture f;
    // plausible direct identifiers a sloppy client might try to push
    const std::vector<std::string> identifiers = {
        "Alice Example", "alice@example.org", "Stationsweg 12", "+31 6 12345678",
    };
    const auto account = f.make_account();
    const auto device = f.make_device(account, "lrm-0003", "living-room-module");
    const auto dev = f.service.authenticate(device.session_token);
    UploadBody body;
    body.upload_time = kT0;
    body.measurements.push_back(Measurement{"co2__ppm", kT0, "400"});
    f.service.ingest_upload(dev, body);

    const auto cells = f.store.dump_all_cells();
    for (const auto& cell : cells) {
        for (const auto& id : identifiers) {
            CHECK(cell.find(id) == std::string::npos);
        }
    }

    // the account entity carries no identity fields at all: its full
    // serialized form is id, campaign, token hash, timestamps, import label
    std::vector<std::string> columns;
    f.store.exec("SELECT name FROM pragma_table_info('account')", {},
                 [&](const Store::Row& r) { columns.push_back(r.text(0)); });
    for (const auto& c : columns) {
        CHECK(c.find("name") == std::string::npos);
        CHECK(c.find("email") == std::string::npos);
        CHECK(c.find("address") == std::string::npos);
        CHECK(c.find("phone") == std::string::npos);
    }
}

TEST_CASE("entity relations mirror the campaign data model") {
    Fixture f;
    const auto account = f.make_account();
    const auto device = f.make_device(account, "lrm-0004", "living-room-module");
    const auto dev = f.service.authenticate(device.session_token);
    UploadBody body;
    body.upload_time = kT0 + 100;
    body.measurements.push_back(Measurement{"co2__ppm", kT0, "400"});
    body.measurements.push_back(Measurement{"co2__ppm", kT0 + 50, "410"});
    f.service.ingest_upload(dev, body);
    f.service.ingest_energy_query(f.service.authenticate(account.session_token), "weather_zone",
                                  "8419699ffffffff", "Europe/Amsterdam", kT0);

    auto count = [&](const std::string& sql) {
        std::int64_t n = -1;
        f.store.exec(sql, {}, [&](const Store::Row& r) { n = r.int64(0); });
        return n;
    };
    // every measurement references exactly one existing upload
    CHECK(count("SELECT COUNT(*) FROM measurement m LEFT JOIN upload u ON u.upload_id = "
                "m.upload_id WHERE u.upload_id IS NULL") == 0);
    // every upload references exactly one data-source instance
    CHECK(count("SELECT COUNT(*) FROM upload u LEFT JOIN data_source d ON d.source_id = "
                "u.source_id WHERE d.source_id IS NULL") == 0);
    // every instance belongs to exactly one account
    CHECK(count("SELECT COUNT(*) FROM data_source d LEFT JOIN account a ON a.account_id = "
                "d.account_id WHERE a.account_id IS NULL") == 0);
    // upload sizes match their measurement counts
    CHECK(count("SELECT COUNT(*) FROM upload u WHERE u.size <> (SELECT COUNT(*) FROM "
                "measurement m WHERE m.upload_id = u.upload_id)") == 0);
}
