#pragma once

#include "bulletin/qa.hpp"
#include "bulletin/schema.hpp"
#include "bulletin/sqlite_db.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace bulletin {

struct UpsertCounts {
    std::int64_t inserted = 0;
    std::int64_t replaced = 0;
};

// Relational store: one SQL table per registered TableSchema, keyed by
// (state_code, date[, entity key]). Replacements log the prior row into
// the internal _audit table. Single writer per database file.
class Store {
public:
    explicit Store(const std::string& db_path);

    // DDL from the registered schemas plus internal tables; idempotent.
    void init_schema(const std::vector<TableSchema>& schemas);

    UpsertCounts upsert(const std::vector<BulletinRecordSet>& sets);

    void record_qa(const QaRecord& qa);
    std::vector<QaRecord> qa_list(std::optional<QaSeverity> severity = {}) const;
    void clear_qa();

    // DDL then INSERTs, tables lexicographic, rows by primary key;
    // byte-identical across runs over identical content. Internal
    // (underscore-prefixed) tables are operational metadata and excluded.
    void dump_sql(std::ostream& out) const;
    void dump_sql_file(const std::string& out_path) const;

    struct TableInfo {
        std::string name;
        std::int64_t row_count = 0;
        std::string min_date, max_date; // empty when the table has no date column
    };
    std::vector<TableInfo> table_catalog() const;

    std::vector<std::pair<Date, std::int64_t>> cumulative_series(
        const std::string& state, const std::string& table, const std::string& column) const;
    std::optional<std::int64_t> int_at(const std::string& state, const Date& date,
                                       const std::string& table,
                                       const std::string& column) const;
    std::vector<Date> dates_for(const std::string& state, const std::string& table) const;
    std::vector<std::string> states_in(const std::string& table) const;
    std::int64_t audit_count() const;
    bool has_table(const std::string& name) const;

    SqliteDb& db() { return db_; }

private:
    SqliteDb db_;
};

} // namespace bulletin
