#include "bulletin/persistence.hpp"

#include "bulletin/errors.hpp"

#include <nlohmann/json.hpp>
#include <sqlite3.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bulletin {

namespace {

std::string sql_string_literal(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        out.push_back(c);
        if (c == '\'') out.push_back('\'');
    }
    out.push_back('\'');
    return out;
}

std::string real_repr(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    std::string s(buf, ptr);
    // Bare integers stay REAL-typed in the dump.
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

std::string sql_type(ColumnKind k) {
    switch (k) {
    case ColumnKind::integer: return "INTEGER";
    case ColumnKind::real: return "REAL";
    case ColumnKind::text:
    case ColumnKind::date: return "TEXT";
    }
    return "TEXT";
}

} // namespace

Store::Store(const std::string& db_path) : db_(db_path) {
    db_.exec("CREATE TABLE IF NOT EXISTS _catalog ("
             "name TEXT PRIMARY KEY, def TEXT NOT NULL)");
    db_.exec("CREATE TABLE IF NOT EXISTS _audit ("
             "id INTEGER PRIMARY KEY AUTOINCREMENT, sql_table TEXT NOT NULL, "
             "state_code TEXT NOT NULL, date TEXT NOT NULL, old_row TEXT NOT NULL)");
    db_.exec("CREATE TABLE IF NOT EXISTS qa_records ("
             "state_code TEXT NOT NULL, date TEXT NOT NULL, sql_table TEXT NOT NULL, "
             "severity TEXT NOT NULL, code TEXT NOT NULL, detail TEXT, "
             "PRIMARY KEY (state_code, date, sql_table, code))");
}

void Store::init_schema(const std::vector<TableSchema>& schemas) {
    for (const TableSchema& s : schemas) {
        std::string ddl = "CREATE TABLE IF NOT EXISTS \"" + s.sql_table +
                          "\" (state_code TEXT NOT NULL, date TEXT NOT NULL";
        for (const ColumnSpec& c : s.column_map)
            ddl += ", \"" + c.dest + "\" " + sql_type(c.kind);
        ddl += ", PRIMARY KEY (state_code, date";
        if (!s.entity_key.empty()) ddl += ", \"" + s.entity_key + "\"";
        ddl += "))";
        db_.exec(ddl);

        nlohmann::json def;
        for (const ColumnSpec& c : s.column_map)
            def["columns"].push_back({{"dest", c.dest}, {"kind", to_string(c.kind)}});
        def["entity_key"] = s.entity_key;
        auto st = db_.prepare("INSERT OR REPLACE INTO _catalog (name, def) VALUES (?, ?)");
        st.bind(1, s.sql_table).bind(2, def.dump());
        st.step();
    }
}

UpsertCounts Store::upsert(const std::vector<BulletinRecordSet>& sets) {
    UpsertCounts counts;
    db_.exec("BEGIN");
    try {
        for (const BulletinRecordSet& rs : sets) {
            // Validates the record shape against the registered definition.
            auto cat = db_.prepare("SELECT def FROM _catalog WHERE name = ?");
            cat.bind(1, rs.sql_table);
            if (!cat.step())
                throw SchemaDriftError(rs.sql_table + ": not a registered table");
            nlohmann::json def = nlohmann::json::parse(cat.text(0));
            std::map<std::string, std::string> kinds;
            for (const auto& c : def.at("columns"))
                kinds[c.at("dest").get<std::string>()] = c.at("kind").get<std::string>();
            std::string entity_key = def.value("entity_key", "");
            int entity_idx = -1;
            for (size_t i = 0; i < rs.columns.size(); ++i) {
                auto it = kinds.find(rs.columns[i]);
                if (it == kinds.end())
                    throw SchemaDriftError(rs.sql_table + ": unknown column " + rs.columns[i]);
                if (rs.columns[i] == entity_key) entity_idx = static_cast<int>(i);
            }
            if (!entity_key.empty() && entity_idx < 0)
                throw SchemaDriftError(rs.sql_table + ": rows lack entity key " + entity_key);
            if (entity_key.empty() && rs.rows.size() > 1)
                throw SchemaDriftError(rs.sql_table +
                                       ": multiple rows per date need an entity_key");
            for (size_t i = 0; i < rs.columns.size(); ++i) {
                const std::string& kind = kinds[rs.columns[i]];
                for (const auto& row : rs.rows) {
                    const Value& v = row[i];
                    bool ok = std::holds_alternative<std::monostate>(v) ||
                              (kind == "integer" && std::holds_alternative<std::int64_t>(v)) ||
                              (kind == "real" && (std::holds_alternative<double>(v) ||
                                                  std::holds_alternative<std::int64_t>(v))) ||
                              ((kind == "text" || kind == "date") &&
                               std::holds_alternative<std::string>(v));
                    if (!ok)
                        throw SchemaDriftError(rs.sql_table + "." + rs.columns[i] +
                                               ": value kind does not match DDL " + kind);
                }
            }

            std::string select_sql = "SELECT * FROM \"" + rs.sql_table +
                                     "\" WHERE state_code = ? AND date = ?";
            std::string delete_sql = "DELETE FROM \"" + rs.sql_table +
                                     "\" WHERE state_code = ? AND date = ?";
            if (entity_idx >= 0) {
                select_sql += " AND \"" + entity_key + "\" = ?";
                delete_sql += " AND \"" + entity_key + "\" = ?";
            }

            std::string insert_sql = "INSERT INTO \"" + rs.sql_table + "\" (state_code, date";
            for (const auto& c : rs.columns) insert_sql += ", \"" + c + "\"";
            insert_sql += ") VALUES (?, ?";
            for (size_t i = 0; i < rs.columns.size(); ++i) insert_sql += ", ?";
            insert_sql += ")";

            std::set<std::string> seen_keys;
            for (const auto& row : rs.rows) {
                std::string ek;
                if (entity_idx >= 0) {
                    const Value& v = row[static_cast<size_t>(entity_idx)];
                    if (const auto* s = std::get_if<std::string>(&v)) ek = *s;
                    else if (const auto* n = std::get_if<std::int64_t>(&v))
                        ek = std::to_string(*n);
                    else
                        throw SchemaDriftError(rs.sql_table + ": null entity key");
                }
                if (!seen_keys.insert(ek).second)
                    throw SchemaDriftError(rs.sql_table + ": duplicate row key '" + ek + "'");

                auto sel = db_.prepare(select_sql);
                sel.bind(1, rs.state_code).bind(2, rs.date.iso());
                if (entity_idx >= 0) sel.bind(3, ek);
                bool exists = sel.step();
                if (exists) {
                    nlohmann::json old = nlohmann::json::object();
                    for (int c = 0; c < sel.column_count(); ++c) {
                        if (sel.is_null(c)) old[sel.column_name(c)] = nullptr;
                        else if (sel.column_type(c) == SQLITE_INTEGER)
                            old[sel.column_name(c)] = sel.int64(c);
                        else if (sel.column_type(c) == SQLITE_FLOAT)
                            old[sel.column_name(c)] = sel.real(c);
                        else old[sel.column_name(c)] = sel.text(c);
                    }
                    auto audit = db_.prepare(
                        "INSERT INTO _audit (sql_table, state_code, date, old_row) "
                        "VALUES (?, ?, ?, ?)");
                    audit.bind(1, rs.sql_table)
                        .bind(2, rs.state_code)
                        .bind(3, rs.date.iso())
                        .bind(4, old.dump());
                    audit.step();
                    auto del = db_.prepare(delete_sql);
                    del.bind(1, rs.state_code).bind(2, rs.date.iso());
                    if (entity_idx >= 0) del.bind(3, ek);
                    del.step();
                    ++counts.replaced;
                } else {
                    ++counts.inserted;
                }

                auto ins = db_.prepare(insert_sql);
                ins.bind(1, rs.state_code).bind(2, rs.date.iso());
                for (size_t i = 0; i < row.size(); ++i) {
                    int idx = static_cast<int>(i) + 3;
                    const Value& v = row[i];
                    if (std::holds_alternative<std::monostate>(v)) ins.bind_null(idx);
                    else if (const auto* n = std::get_if<std::int64_t>(&v)) ins.bind(idx, *n);
                    else if (const auto* d = std::get_if<double>(&v)) ins.bind(idx, *d);
                    else ins.bind(idx, std::get<std::string>(v));
                }
                ins.step();
            }
        }
        db_.exec("COMMIT");
    } catch (...) {
        db_.exec("ROLLBACK");
        throw;
    }
    return counts;
}

void Store::record_qa(const QaRecord& qa) {
    auto st = db_.prepare(
        "INSERT OR REPLACE INTO qa_records (state_code, date, sql_table, severity, code, "
        "detail) VALUES (?, ?, ?, ?, ?, ?)");
    st.bind(1, qa.state_code)
        .bind(2, qa.date.iso())
        .bind(3, qa.sql_table)
        .bind(4, std::string(to_string(qa.severity)))
        .bind(5, std::string(to_string(qa.code)))
        .bind(6, qa.detail);
    st.step();
}

std::vector<QaRecord> Store::qa_list(std::optional<QaSeverity> severity) const {
    std::string sql = "SELECT state_code, date, sql_table, severity, code, detail "
                      "FROM qa_records";
    if (severity) sql += " WHERE severity = ?";
    sql += " ORDER BY state_code, date, sql_table, code";
    auto st = db_.prepare(sql);
    if (severity) st.bind(1, std::string(to_string(*severity)));
    std::vector<QaRecord> out;
    while (st.step()) {
        QaRecord qa;
        qa.state_code = st.text(0);
        qa.date = Date::from_iso(st.text(1)).value_or(Date(1970, 1, 1));
        qa.sql_table = st.text(2);
        qa.severity = qa_severity_from(st.text(3));
        qa.code = qa_code_from(st.text(4));
        qa.detail = st.text(5);
        out.push_back(std::move(qa));
    }
    return out;
}

void Store::clear_qa() { db_.exec("DELETE FROM qa_records"); }

void Store::dump_sql(std::ostream& out) const {
    out << "PRAGMA foreign_keys=OFF;\nBEGIN TRANSACTION;\n";
    auto tables = db_.prepare(
        "SELECT name, sql FROM sqlite_master WHERE type='table' "
        "AND name NOT LIKE '\\_%' ESCAPE '\\' AND name NOT LIKE 'sqlite_%' "
        "ORDER BY name");
    while (tables.step()) {
        std::string name = tables.text(0);
        out << tables.text(1) << ";\n";

        // Orders rows by primary key columns (PRAGMA order), else all columns.
        auto info = db_.prepare("PRAGMA table_info(\"" + name + "\")");
        std::vector<std::pair<int, std::string>> pk;
        std::vector<std::string> cols;
        while (info.step()) {
            cols.push_back(info.text(1));
            int pk_pos = static_cast<int>(info.int64(5));
            if (pk_pos > 0) pk.emplace_back(pk_pos, info.text(1));
        }
        std::sort(pk.begin(), pk.end());
        std::string order;
        if (!pk.empty()) {
            for (const auto& [pos, col] : pk)
                order += (order.empty() ? "" : ", ") + ("\"" + col + "\"");
        } else {
            for (const auto& col : cols) order += (order.empty() ? "" : ", ") + ("\"" + col + "\"");
        }
        auto rows = db_.prepare("SELECT * FROM \"" + name + "\" ORDER BY " + order);
        while (rows.step()) {
            out << "INSERT INTO \"" << name << "\" VALUES (";
            for (int c = 0; c < rows.column_count(); ++c) {
                if (c) out << ", ";
                if (rows.is_null(c)) out << "NULL";
                else if (rows.column_type(c) == SQLITE_INTEGER) out << rows.int64(c);
                else if (rows.column_type(c) == SQLITE_FLOAT) out << real_repr(rows.real(c));
                else out << sql_string_literal(rows.text(c));
            }
            out << ");\n";
        }
    }
    out << "COMMIT;\n";
}

void Store::dump_sql_file(const std::string& out_path) const {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write dump: " + out_path);
    dump_sql(f);
}

std::vector<Store::TableInfo> Store::table_catalog() const {
    std::vector<TableInfo> out;
    auto tables = db_.prepare(
        "SELECT name FROM sqlite_master WHERE type='table' "
        "AND name NOT LIKE '\\_%' ESCAPE '\\' AND name NOT LIKE 'sqlite_%' "
        "ORDER BY name");
    while (tables.step()) {
        TableInfo info;
        info.name = tables.text(0);
        auto cnt = db_.prepare("SELECT COUNT(*) FROM \"" + info.name + "\"");
        cnt.step();
        info.row_count = cnt.int64(0);
        auto has_date = db_.prepare("PRAGMA table_info(\"" + info.name + "\")");
        bool date_col = false;
        while (has_date.step())
            if (has_date.text(1) == std::string("date")) date_col = true;
        if (date_col && info.row_count > 0) {
            auto mm = db_.prepare("SELECT MIN(date), MAX(date) FROM \"" + info.name + "\"");
            mm.step();
            info.min_date = mm.text(0);
            info.max_date = mm.text(1);
        }
        out.push_back(std::move(info));
    }
    return out;
}

std::vector<std::pair<Date, std::int64_t>> Store::cumulative_series(
    const std::string& state, const std::string& table, const std::string& column) const {
    auto st = db_.prepare("SELECT date, \"" + column + "\" FROM \"" + table +
                          "\" WHERE state_code = ? AND \"" + column +
                          "\" IS NOT NULL ORDER BY date");
    st.bind(1, state);
    std::vector<std::pair<Date, std::int64_t>> out;
    while (st.step()) {
        auto d = Date::from_iso(st.text(0));
        if (d) out.emplace_back(*d, st.int64(1));
    }
    return out;
}

std::optional<std::int64_t> Store::int_at(const std::string& state, const Date& date,
                                          const std::string& table,
                                          const std::string& column) const {
    auto st = db_.prepare("SELECT \"" + column + "\" FROM \"" + table +
                          "\" WHERE state_code = ? AND date = ?");
    st.bind(1, state).bind(2, date.iso());
    if (!st.step() || st.is_null(0)) return std::nullopt;
    return st.int64(0);
}

std::vector<Date> Store::dates_for(const std::string& state, const std::string& table) const {
    auto st = db_.prepare("SELECT DISTINCT date FROM \"" + table +
                          "\" WHERE state_code = ? ORDER BY date");
    st.bind(1, state);
    std::vector<Date> out;
    while (st.step())
        if (auto d = Date::from_iso(st.text(0))) out.push_back(*d);
    return out;
}

std::vector<std::string> Store::states_in(const std::string& table) const {
    auto st = db_.prepare("SELECT DISTINCT state_code FROM \"" + table + "\" ORDER BY state_code");
    std::vector<std::string> out;
    while (st.step()) out.push_back(st.text(0));
    return out;
}

std::int64_t Store::audit_count() const {
    auto st = db_.prepare("SELECT COUNT(*) FROM _audit");
    st.step();
    return st.int64(0);
}

bool Store::has_table(const std::string& name) const {
    auto st = db_.prepare("SELECT 1 FROM sqlite_master WHERE type='table' AND name = ?");
    st.bind(1, name);
    return st.step();
}

} // namespace bulletin
