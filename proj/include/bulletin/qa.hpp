#pragma once

#include "bulletin/dates.hpp"

#include <string>

namespace bulletin {

enum class QaSeverity { warn, error };

enum class QaCode {
    ambiguous_match,
    coercion_failed,
    required_null,
    negative_delta,
    hash_changed,
    ratio_out_of_range,
    delta_mismatch,
    table_not_found,
    ingest_failed,
    schema_drift,
};

// Structured anomaly attached to one (state, date, table);
// (state, date, table, code) is unique per run.
struct QaRecord {
    std::string state_code;
    Date date;
    std::string sql_table;
    QaSeverity severity = QaSeverity::warn;
    QaCode code = QaCode::coercion_failed;
    std::string detail;
};

const char* to_string(QaSeverity s);
const char* to_string(QaCode c);
QaSeverity qa_severity_from(const std::string& s);
QaCode qa_code_from(const std::string& s);

} // namespace bulletin
