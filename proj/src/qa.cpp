#include "bulletin/qa.hpp"

#include "bulletin/errors.hpp"

namespace bulletin {

const char* to_string(QaSeverity s) {
    return s == QaSeverity::warn ? "warn" : "error";
}

const char* to_string(QaCode c) {
    switch (c) {
    case QaCode::ambiguous_match: return "ambiguous_match";
    case QaCode::coercion_failed: return "coercion_failed";
    case QaCode::required_null: return "required_null";
    case QaCode::negative_delta: return "negative_delta";
    case QaCode::hash_changed: return "hash_changed";
    case QaCode::ratio_out_of_range: return "ratio_out_of_range";
    case QaCode::delta_mismatch: return "delta_mismatch";
    case QaCode::table_not_found: return "table_not_found";
    case QaCode::ingest_failed: return "ingest_failed";
    case QaCode::schema_drift: return "schema_drift";
    }
    return "?";
}

QaSeverity qa_severity_from(const std::string& s) {
    if (s == "warn") return QaSeverity::warn;
    if (s == "error") return QaSeverity::error;
    throw ConfigError("unknown qa severity: " + s);
}

QaCode qa_code_from(const std::string& s) {
    for (QaCode c : {QaCode::ambiguous_match, QaCode::coercion_failed, QaCode::required_null,
                     QaCode::negative_delta, QaCode::hash_changed, QaCode::ratio_out_of_range,
                     QaCode::delta_mismatch, QaCode::table_not_found, QaCode::ingest_failed,
                     QaCode::schema_drift})
        if (s == to_string(c)) return c;
    throw ConfigError("unknown qa code: " + s);
}

} // namespace bulletin
