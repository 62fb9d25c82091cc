#pragma once

#include <cstdint>
#include <memory>
#include <string>

struct sqlite3;
struct sqlite3_stmt;

namespace bulletin {

// RAII wrapper over the sqlite3 C API; errors surface as std::runtime_error.
class SqliteDb {
public:
    explicit SqliteDb(const std::string& path);
    ~SqliteDb();
    SqliteDb(const SqliteDb&) = delete;
    SqliteDb& operator=(const SqliteDb&) = delete;
    SqliteDb(SqliteDb&& other) noexcept;

    void exec(const std::string& sql);

    class Stmt {
    public:
        Stmt(sqlite3* db, const std::string& sql);
        ~Stmt();
        Stmt(const Stmt&) = delete;
        Stmt(Stmt&& other) noexcept;

        Stmt& bind(int idx, std::int64_t v);
        Stmt& bind(int idx, double v);
        Stmt& bind(int idx, const std::string& v);
        Stmt& bind_null(int idx);

        bool step(); // true while a row is available
        void reset();

        bool is_null(int col) const;
        std::int64_t int64(int col) const;
        double real(int col) const;
        std::string text(int col) const;
        int column_count() const;
        std::string column_name(int col) const;
        int column_type(int col) const; // SQLITE_INTEGER etc.

    private:
        sqlite3_stmt* stmt_ = nullptr;
    };

    Stmt prepare(const std::string& sql) const;

private:
    sqlite3* db_ = nullptr;
};

} // namespace bulletin
