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

#ifndef GEAR_SERVER_STORE_HPP
#define GEAR_SERVER_STORE_HPP

#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

struct sqlite3;
struct sqlite3_stmt;

namespace gear::server {

/// Relational persistence behind the service. One serialized connection;
/// every mutation the service performs runs inside a transaction, so the
/// single-use and single-activation guarantees hold under concurrent
/// requests.
class Store {
   public:
    /// Opens (and migrates) the database; ":memory:" gives a private
    /// throwaway store.
    explicit Store(const std::string& path);
    ~Store();

    Store(const Store&) = delete;
    Store& operator=(const Store&) = delete;

    /// A bound, stepped statement row: column accessors by index.
    class Row {
       public:
        explicit Row(sqlite3_stmt* stmt) : stmt_(stmt) {}
        std::int64_t int64(int col) const;
        std::string text(int col) const;
        double real(int col) const;
        bool is_null(int col) const;

       private:
        sqlite3_stmt* stmt_;
    };

    using Binder = std::function<void(sqlite3_stmt*)>;
    using RowFn = std::function<void(const Row&)>;

    /// Run a statement; `bind` may be empty. Returns rows changed for
    /// mutations. Throws std::runtime_error on SQL errors.
    int exec(const std::string& sql, const Binder& bind = {}, const RowFn& on_row = {});

    /// Run `fn` inside one transaction, serialized against all other store
    /// access. Rolls back and rethrows on exceptions.
    void transaction(const std::function<void()>& fn);

    std::int64_t last_insert_id();

    /// Every text and numeric cell in the database, one string per cell;
    /// lets audits grep the full persisted state.
    std::vector<std::string> dump_all_cells();

    static void bind_int64(sqlite3_stmt* stmt, int index, std::int64_t value);
    static void bind_text(sqlite3_stmt* stmt, int index, const std::string& value);
    static void bind_real(sqlite3_stmt* stmt, int index, double value);
    static void bind_null(sqlite3_stmt* stmt, int index);

    std::recursive_mutex& mutex() { return mutex_; }

   private:
    void migrate();

    sqlite3* db_ = nullptr;
    std::recursive_mutex mutex_;
};

}  // namespace gear::server

#endif  // GEAR_SERVER_STORE_HPP
