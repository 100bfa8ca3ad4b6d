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

#include "server/store.hpp"

#include <sqlite3.h>

#include <stdexcept>

namespace gear::server {

namespace {

// Mirrors the campaign/measurement entity model: an Account participates in
// a Campaign via an App; activating items of the campaign's data-source
// list creates DataSource instances, whose Uploads bundle Measurements of
// named Properties.
constexpr const char* kSchema = R"sql(
CREATE TABLE IF NOT EXISTS app (
    app_id INTEGER PRIMARY KEY,
    name TEXT NOT NULL UNIQUE
);
CREATE TABLE IF NOT EXISTS campaign (
    campaign_id INTEGER PRIMARY KEY,
    app_id INTEGER NOT NULL REFERENCES app(app_id),
    name TEXT NOT NULL,
    overdue_multiplier REAL NOT NULL DEFAULT 2.0
);
CREATE TABLE IF NOT EXISTS campaign_source (
    campaign_id INTEGER NOT NULL REFERENCES campaign(campaign_id),
    position INTEGER NOT NULL,
    type_name TEXT NOT NULL,
    PRIMARY KEY (campaign_id, position)
);
CREATE TABLE IF NOT EXISTS account (
    account_id INTEGER PRIMARY KEY,
    campaign_id INTEGER NOT NULL REFERENCES campaign(campaign_id),
    token_hash TEXT,
    activated_at INTEGER,
    created_at INTEGER NOT NULL,
    import_label TEXT
);
CREATE TABLE IF NOT EXISTS consumed_token (
    token_hash TEXT PRIMARY KEY
);
CREATE TABLE IF NOT EXISTS session (
    token_hash TEXT PRIMARY KEY,
    principal TEXT NOT NULL,
    principal_id INTEGER NOT NULL,
    issued_at INTEGER NOT NULL
);
CREATE TABLE IF NOT EXISTS device (
    device_id INTEGER PRIMARY KEY,
    device_name TEXT NOT NULL UNIQUE,
    type_name TEXT NOT NULL,
    pop_hash TEXT NOT NULL,
    account_id INTEGER REFERENCES account(account_id),
    activated_at INTEGER
);
CREATE TABLE IF NOT EXISTS data_source (
    source_id INTEGER PRIMARY KEY,
    account_id INTEGER NOT NULL REFERENCES account(account_id),
    type_name TEXT NOT NULL,
    kind TEXT NOT NULL,
    created_at INTEGER NOT NULL,
    UNIQUE (account_id, type_name)
);
CREATE TABLE IF NOT EXISTS upload (
    upload_id INTEGER PRIMARY KEY,
    source_id INTEGER NOT NULL REFERENCES data_source(source_id),
    upload_time INTEGER NOT NULL,
    size INTEGER NOT NULL,
    kind TEXT NOT NULL DEFAULT 'device'
);
CREATE TABLE IF NOT EXISTS property (
    name TEXT PRIMARY KEY,
    unit TEXT NOT NULL,
    format TEXT NOT NULL
) WITHOUT ROWID;
CREATE TABLE IF NOT EXISTS measurement (
    source_id INTEGER NOT NULL REFERENCES data_source(source_id),
    property TEXT NOT NULL REFERENCES property(name),
    time INTEGER NOT NULL,
    value TEXT NOT NULL,
    upload_id INTEGER NOT NULL REFERENCES upload(upload_id),
    PRIMARY KEY (source_id, property, time)
) WITHOUT ROWID;
CREATE TABLE IF NOT EXISTS cloud_feed_auth (
    auth_id INTEGER PRIMARY KEY AUTOINCREMENT,
    account_id INTEGER NOT NULL REFERENCES account(account_id),
    feed_type TEXT NOT NULL,
    authorized_at INTEGER NOT NULL,
    UNIQUE (account_id, feed_type)
);
)sql";

}  // namespace

Store::Store(const std::string& path) {
    const int flags = SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX;
    if (sqlite3_open_v2(path.c_str(), &db_, flags, nullptr) != SQLITE_OK) {
        const std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
        if (db_) sqlite3_close(db_);
        throw std::runtime_error("cannot open store at " + path + ": " + msg);
    }
    migrate();
}

Store::~Store() {
    if (db_) sqlite3_close(db_);
}

void Store::migrate() {
    std::lock_guard lock(mutex_);
    char* err = nullptr;
    if (sqlite3_exec(db_, "PRAGMA foreign_keys = ON;", nullptr, nullptr, &err) != SQLITE_OK ||
        sqlite3_exec(db_, kSchema, nullptr, nullptr, &err) != SQLITE_OK) {
        const std::string msg = err ? err : "unknown error";
        sqlite3_free(err);
        throw std::runtime_error("schema migration failed: " + msg);
    }
}

std::int64_t Store::Row::int64(int col) const { return sqlite3_column_int64(stmt_, col); }

std::string Store::Row::text(int col) const {
    const unsigned char* t = sqlite3_column_text(stmt_, col);
    return t ? reinterpret_cast<const char*>(t) : "";
}

double Store::Row::real(int col) const { return sqlite3_column_double(stmt_, col); }

bool Store::Row::is_null(int col) const { return sqlite3_column_type(stmt_, col) == SQLITE_NULL; }

int Store::exec(const std::string& sql, const Binder& bind, const RowFn& on_row) {
    std::lock_guard lock(mutex_);
    sqlite3_stmt* stmt = nullptr;
    if (sqlite3_prepare_v2(db_, sql.c_str(), -1, &stmt, nullptr) != SQLITE_OK) {
        throw std::runtime_error(std::string("prepare failed: ") + sqlite3_errmsg(db_) +
                                 " in: " + sql);
    }
    if (bind) bind(stmt);
    int rc;
    while ((rc = sqlite3_step(stmt)) == SQLITE_ROW) {
        if (on_row) on_row(Row(stmt));
    }
    const bool ok = rc == SQLITE_DONE;
    const std::string msg = ok ? "" : sqlite3_errmsg(db_);
    sqlite3_finalize(stmt);
    if (!ok) throw std::runtime_error("step failed: " + msg + " in: " + sql);
    return sqlite3_changes(db_);
}

void Store::transaction(const std::function<void()>& fn) {
    std::lock_guard lock(mutex_);
    exec("BEGIN IMMEDIATE");
    try {
        fn();
        exec("COMMIT");
    } catch (...) {
        try {
            exec("ROLLBACK");
        } catch (...) {
        }
        throw;
    }
}

std::int64_t Store::last_insert_id() {
    std::lock_guard lock(mutex_);
    return sqlite3_last_insert_rowid(db_);
}

std::vector<std::string> Store::dump_all_cells() {
    std::lock_guard lock(mutex_);
    std::vector<std::string> tables;
    exec("SELECT name FROM sqlite_master WHERE type='table'", {},
         [&](const Row& r) { tables.push_back(r.text(0)); });
    std::vector<std::string> cells;
    for (const auto& table : tables) {
        sqlite3_stmt* stmt = nullptr;
        const std::string sql = "SELECT * FROM \"" + table + "\"";
        if (sqlite3_prepare_v2(db_, sql.c_str(), -1, &stmt, nullptr) != SQLITE_OK) continue;
        while (sqlite3_step(stmt) == SQLITE_ROW) {
            const int cols = sqlite3_column_count(stmt);
            for (int c = 0; c < cols; ++c) {
                const unsigned char* t = sqlite3_column_text(stmt, c);
                if (t) cells.emplace_back(reinterpret_cast<const char*>(t));
            }
        }
        sqlite3_finalize(stmt);
    }
    return cells;
}

void Store::bind_int64(sqlite3_stmt* stmt, int index, std::int64_t value) {
    sqlite3_bind_int64(stmt, index, value);
}

void Store::bind_text(sqlite3_stmt* stmt, int index, const std::string& value) {
    sqlite3_bind_text(stmt, index, value.c_str(), -1, SQLITE_TRANSIENT);
}

void Store::bind_real(sqlite3_stmt* stmt, int index, double value) {
    sqlite3_bind_double(stmt, index, value);
}

void Store::bind_null(sqlite3_stmt* stmt, int index) { sqlite3_bind_null(stmt, index); }

}  // namespace gear::server
