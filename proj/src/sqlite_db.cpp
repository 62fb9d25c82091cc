#include "bulletin/sqlite_db.hpp"

#include <sqlite3.h>

#include <stdexcept>

namespace bulletin {

namespace {

[[noreturn]] void fail(sqlite3* db, const std::string& context) {
    throw std::runtime_error(context + ": " + (db ? sqlite3_errmsg(db) : "null db"));
}

} // namespace

SqliteDb::SqliteDb(const std::string& path) {
    if (sqlite3_open(path.c_str(), &db_) != SQLITE_OK) fail(db_, "open " + path);
    exec("PRAGMA journal_mode=TRUNCATE");
    exec("PRAGMA foreign_keys=ON");
}

SqliteDb::~SqliteDb() {
    if (db_) sqlite3_close(db_);
}

SqliteDb::SqliteDb(SqliteDb&& other) noexcept : db_(other.db_) { other.db_ = nullptr; }

void SqliteDb::exec(const std::string& sql) {
    char* err = nullptr;
    if (sqlite3_exec(db_, sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
        std::string msg = err ? err : "unknown error";
        sqlite3_free(err);
        throw std::runtime_error("exec failed: " + msg + " in: " + sql);
    }
}

SqliteDb::Stmt::Stmt(sqlite3* db, const std::string& sql) {
    if (sqlite3_prepare_v2(db, sql.c_str(), -1, &stmt_, nullptr) != SQLITE_OK)
        fail(db, "prepare " + sql);
}

SqliteDb::Stmt::~Stmt() {
    if (stmt_) sqlite3_finalize(stmt_);
}

SqliteDb::Stmt::Stmt(Stmt&& other) noexcept : stmt_(other.stmt_) { other.stmt_ = nullptr; }

SqliteDb::Stmt& SqliteDb::Stmt::bind(int idx, std::int64_t v) {
    sqlite3_bind_int64(stmt_, idx, v);
    return *this;
}

SqliteDb::Stmt& SqliteDb::Stmt::bind(int idx, double v) {
    sqlite3_bind_double(stmt_, idx, v);
    return *this;
}

SqliteDb::Stmt& SqliteDb::Stmt::bind(int idx, const std::string& v) {
    sqlite3_bind_text(stmt_, idx, v.c_str(), static_cast<int>(v.size()), SQLITE_TRANSIENT);
    return *this;
}

SqliteDb::Stmt& SqliteDb::Stmt::bind_null(int idx) {
    sqlite3_bind_null(stmt_, idx);
    return *this;
}

bool SqliteDb::Stmt::step() {
    int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw std::runtime_error(std::string("step failed: ") +
                             sqlite3_errstr(rc));
}

void SqliteDb::Stmt::reset() {
    sqlite3_reset(stmt_);
    sqlite3_clear_bindings(stmt_);
}

bool SqliteDb::Stmt::is_null(int col) const {
    return sqlite3_column_type(stmt_, col) == SQLITE_NULL;
}

std::int64_t SqliteDb::Stmt::int64(int col) const { return sqlite3_column_int64(stmt_, col); }

double SqliteDb::Stmt::real(int col) const { return sqlite3_column_double(stmt_, col); }

std::string SqliteDb::Stmt::text(int col) const {
    const unsigned char* t = sqlite3_column_text(stmt_, col);
    return t ? reinterpret_cast<const char*>(t) : "";
}

int SqliteDb::Stmt::column_count() const { return sqlite3_column_count(stmt_); }

std::string SqliteDb::Stmt::column_name(int col) const {
    const char* n = sqlite3_column_name(stmt_, col);
    return n ? n : "";
}

int SqliteDb::Stmt::column_type(int col) const { return sqlite3_column_type(stmt_, col); }

SqliteDb::Stmt SqliteDb::prepare(const std::string& sql) const { return Stmt(db_, sql); }

} // namespace bulletin
