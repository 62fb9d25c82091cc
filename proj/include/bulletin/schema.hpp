#pragma once

#include "bulletin/dates.hpp"
#include "bulletin/geometry.hpp"
#include "bulletin/qa.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace bulletin {

enum class ColumnKind { integer, real, text, date };

struct ColumnSpec {
    std::variant<std::string, int> source; // header phrase or 0-based index
    std::string dest;
    ColumnKind kind = ColumnKind::text;
    bool required = false;
};

enum class Orientation { row_wise, key_value };

// Declarative mapping from one detected table to typed records; authored
// once per state against its bulletin layout.
struct TableSchema {
    std::string state_code;
    std::string table_id;
    std::string sql_table;
    std::vector<std::string> header_anchors; // normalized keyword phrases
    double anchor_threshold = 0.85;
    int grid_index = -1; // positional locator when no anchors fit
    std::vector<ColumnSpec> column_map;
    Orientation orientation = Orientation::row_wise;
    bool merge_continuation_rows = false;
    std::string entity_key; // extra primary-key column for per-row tables
};

using Value = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Provenance {
    std::string bulletin_sha256;
    int page_index = -1;
    DetectMethod method = DetectMethod::stream;
    RegionOrigin region_source = RegionOrigin::none;
};

struct BulletinRecordSet {
    std::string state_code;
    Date date;
    std::string sql_table;
    std::vector<std::string> columns; // dest names, schema order
    std::vector<std::vector<Value>> rows;
    Provenance provenance;
};

class AmbiguousMatch : public std::runtime_error {
public:
    explicit AmbiguousMatch(const std::string& msg) : std::runtime_error(msg) {}
};

// Case-folded, punctuation stripped, digits kept, whitespace collapsed,
// footnote markers dropped. Idempotent.
std::string normalize_header(const std::string& s);

// Indel similarity 2*LCS/(|a|+|b|) in [0,1].
double similarity(const std::string& a, const std::string& b);

struct MatchResult {
    const TableGrid* grid = nullptr;
    int page_index = 0;
    int header_rows = 1; // 1, or 2 when the header wraps onto a second row
};

struct PageGrids {
    int page_index = 0;
    std::vector<TableGrid> grids;
};

// First grid whose header row (row 0, or rows 0-1 merged) carries every
// anchor at similarity >= threshold. Two matches -> AmbiguousMatch.
std::optional<MatchResult> match_table(const std::vector<PageGrids>& pages,
                                       const TableSchema& schema);

// Typed coercion; "nil"/"na"/"-"/"" (any case) are null. Throws
// CoercionError when a non-null value cannot be parsed.
Value coerce(const std::string& cell_text, ColumnKind kind,
             const std::vector<std::string>& date_formats = {});

struct ExtractOutcome {
    std::vector<BulletinRecordSet> recordsets;
    std::vector<QaRecord> qa;
};

// Applies every schema; each yields exactly one RecordSet or one QaRecord.
ExtractOutcome extract_records(const std::vector<PageGrids>& pages, const Date& date,
                               const std::vector<TableSchema>& schemas,
                               const Provenance& base,
                               const std::vector<std::string>& date_formats = {});

// Schema files: one JSON file per state per version.
std::vector<TableSchema> load_schema_file(const std::string& path);

// Picks the version file (named YYYY-MM-DD.json) active on `date`:
// the latest version <= date, else the earliest shipped.
std::vector<TableSchema> load_schemas_for(const std::string& schema_dir,
                                          const std::string& state_code, const Date& date);

// Every schema shipped for any state, deduplicated by sql_table;
// drives database DDL.
std::vector<TableSchema> load_all_schemas(const std::string& schema_dir);

const char* to_string(ColumnKind k);

} // namespace bulletin
