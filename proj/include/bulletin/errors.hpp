#pragma once

#include <stdexcept>
#include <string>

namespace bulletin {

enum class IngestFault { corrupt, encrypted, bad_grid_row, bad_hint };

class IngestError : public std::runtime_error {
public:
    IngestError(IngestFault fault, std::string msg)
        : std::runtime_error(std::move(msg)), fault_(fault) {}
    IngestFault fault() const { return fault_; }

private:
    IngestFault fault_;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class GenError : public std::runtime_error {
public:
    explicit GenError(const std::string& msg) : std::runtime_error(msg) {}
};

class ReportError : public std::runtime_error {
public:
    explicit ReportError(const std::string& msg) : std::runtime_error(msg) {}
};

// Carries the cell provenance of the value that failed to coerce.
class CoercionError : public std::runtime_error {
public:
    CoercionError(std::string msg, std::string column, std::string cell_text)
        : std::runtime_error(std::move(msg)), column_(std::move(column)),
          cell_text_(std::move(cell_text)) {}
    const std::string& column() const { return column_; }
    const std::string& cell_text() const { return cell_text_; }

private:
    std::string column_;
    std::string cell_text_;
};

class SchemaDriftError : public std::runtime_error {
public:
    explicit SchemaDriftError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace bulletin
