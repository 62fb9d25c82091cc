#include "bulletin/schema.hpp"

#include "bulletin/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>

namespace bulletin {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

bool is_null_sentinel(const std::string& t) {
    std::string low = lower(t);
    return low.empty() || low == "-" || low == "--" || low == "nil" || low == "na" ||
           low == "n/a";
}

// First token shaped like a number: optional sign, digits with grouping
// commas, optional decimal part.
std::optional<std::string> first_numeric_token(const std::string& s) {
    for (size_t i = 0; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) continue;
        size_t start = i;
        if (start > 0 && (s[start - 1] == '-' || s[start - 1] == '+')) --start;
        size_t j = i;
        std::string token;
        if (start < i) token.push_back(s[start]);
        bool seen_dot = false;
        while (j < s.size()) {
            char c = s[j];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                token.push_back(c);
            } else if (c == ',' && j + 1 < s.size() &&
                       std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
                token.push_back(c);
            } else if (c == '.' && !seen_dot && j + 1 < s.size() &&
                       std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
                token.push_back(c);
                seen_dot = true;
            } else {
                break;
            }
            ++j;
        }
        return token;
    }
    return std::nullopt;
}

std::string strip_commas(const std::string& s) {
    std::string out;
    for (char c : s)
        if (c != ',') out.push_back(c);
    return out;
}

size_t lcs_length(const std::string& a, const std::string& b) {
    std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (size_t i = 1; i <= a.size(); ++i) {
        for (size_t j = 1; j <= b.size(); ++j) {
            if (a[i - 1] == b[j - 1]) cur[j] = prev[j - 1] + 1;
            else cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string header_cell_text(const TableGrid& grid, int header_rows, int col) {
    const Cell* top = grid.cell_at(0, col);
    std::string text = top ? top->text : "";
    if (header_rows == 2) {
        const Cell* second = grid.cell_at(1, col);
        if (second && second != top && !second->text.empty()) {
            if (!text.empty()) text += " ";
            text += second->text;
        }
    }
    return text;
}

bool anchors_present(const TableGrid& grid, const TableSchema& schema, int header_rows) {
    for (const std::string& anchor : schema.header_anchors) {
        std::string want = normalize_header(anchor);
        bool found = false;
        for (int c = 0; c < grid.n_cols && !found; ++c) {
            std::string have = normalize_header(header_cell_text(grid, header_rows, c));
            if (similarity(have, want) >= schema.anchor_threshold) found = true;
        }
        if (!found) return false;
    }
    return true;
}

// Best column for a header phrase, or -1.
int resolve_column(const TableGrid& grid, int header_rows, const std::string& phrase,
                   double threshold) {
    std::string want = normalize_header(phrase);
    int best = -1;
    double best_sim = 0;
    for (int c = 0; c < grid.n_cols; ++c) {
        double sim = similarity(normalize_header(header_cell_text(grid, header_rows, c)), want);
        if (sim >= threshold && sim > best_sim) {
            best = c;
            best_sim = sim;
        }
    }
    return best;
}

std::string cell_text_at(const TableGrid& grid, int row, int col) {
    const Cell* c = grid.cell_at(row, col);
    return c ? c->text : "";
}

ColumnKind kind_from(const std::string& s) {
    if (s == "integer") return ColumnKind::integer;
    if (s == "real") return ColumnKind::real;
    if (s == "text") return ColumnKind::text;
    if (s == "date") return ColumnKind::date;
    throw ConfigError("unknown column kind: " + s);
}

TableSchema schema_from_json(const nlohmann::json& j, const std::string& state_code) {
    TableSchema s;
    s.state_code = state_code;
    s.table_id = j.at("table_id").get<std::string>();
    s.sql_table = j.value("sql_table", s.table_id);
    s.header_anchors = j.value("header_anchors", std::vector<std::string>{});
    s.anchor_threshold = j.value("anchor_threshold", 0.85);
    s.grid_index = j.value("grid_index", -1);
    std::string orient = j.value("orientation", "row-wise");
    if (orient == "key-value") s.orientation = Orientation::key_value;
    else if (orient == "row-wise") s.orientation = Orientation::row_wise;
    else throw ConfigError("unknown orientation: " + orient);
    s.merge_continuation_rows = j.value("merge_continuation_rows", false);
    s.entity_key = j.value("entity_key", "");
    for (const auto& cj : j.at("columns")) {
        ColumnSpec col;
        const auto& src = cj.at("source");
        if (src.is_number_integer()) col.source = src.get<int>();
        else col.source = src.get<std::string>();
        col.dest = cj.at("dest").get<std::string>();
        col.kind = kind_from(cj.value("kind", "text"));
        col.required = cj.value("required", false);
        s.column_map.push_back(std::move(col));
    }

    std::set<std::string> dests;
    for (const auto& col : s.column_map)
        if (!dests.insert(col.dest).second)
            throw ConfigError(s.table_id + ": duplicate dest " + col.dest);
    if (s.header_anchors.empty() && s.grid_index < 0)
        throw ConfigError(s.table_id + ": needs header_anchors or grid_index");
    if (s.column_map.empty()) throw ConfigError(s.table_id + ": empty column map");
    if (!s.entity_key.empty() && !dests.count(s.entity_key))
        throw ConfigError(s.table_id + ": entity_key not in columns");
    return s;
}

} // namespace

std::string normalize_header(const std::string& s) {
    std::string out;
    bool pending_space = false;
    for (unsigned char c : s) {
        if (std::isalnum(c) && c < 128) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            out.push_back(static_cast<char>(std::tolower(c)));
        } else {
            pending_space = true; // punctuation, whitespace, non-ASCII
        }
    }
    return out;
}

double similarity(const std::string& a, const std::string& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    return 2.0 * static_cast<double>(lcs_length(a, b)) /
           static_cast<double>(a.size() + b.size());
}

std::optional<MatchResult> match_table(const std::vector<PageGrids>& pages,
                                       const TableSchema& schema) {
    std::vector<MatchResult> hits;
    int flat_index = 0;
    for (const PageGrids& page : pages) {
        for (const TableGrid& grid : page.grids) {
            if (!schema.header_anchors.empty()) {
                if (anchors_present(grid, schema, 1))
                    hits.push_back(MatchResult{&grid, page.page_index, 1});
                else if (grid.n_rows >= 3 && anchors_present(grid, schema, 2))
                    hits.push_back(MatchResult{&grid, page.page_index, 2});
            } else if (flat_index == schema.grid_index) {
                hits.push_back(MatchResult{&grid, page.page_index, 1});
            }
            ++flat_index;
        }
    }
    if (hits.empty()) return std::nullopt;
    if (hits.size() > 1)
        throw AmbiguousMatch(schema.table_id + ": " + std::to_string(hits.size()) +
                             " grids match the anchors");
    return hits.front();
}

Value coerce(const std::string& cell_text, ColumnKind kind,
             const std::vector<std::string>& date_formats) {
    std::string t = trim(cell_text);
    if (kind == ColumnKind::text) return t;
    if (is_null_sentinel(t)) return std::monostate{};
    switch (kind) {
    case ColumnKind::integer: {
        auto token = first_numeric_token(t);
        if (!token) throw CoercionError("no numeric token in '" + t + "'", "", t);
        std::string digits = strip_commas(*token);
        size_t dot = digits.find('.');
        if (dot != std::string::npos) digits = digits.substr(0, dot);
        try {
            return static_cast<std::int64_t>(std::stoll(digits));
        } catch (const std::exception&) {
            throw CoercionError("integer out of range: '" + t + "'", "", t);
        }
    }
    case ColumnKind::real: {
        auto token = first_numeric_token(t);
        if (!token) throw CoercionError("no numeric token in '" + t + "'", "", t);
        return std::stod(strip_commas(*token));
    }
    case ColumnKind::date: {
        std::vector<std::string> formats = date_formats;
        if (formats.empty()) formats = {"%Y-%m-%d", "%d-%m-%Y", "%d/%m/%Y", "%d %B %Y"};
        if (auto d = parse_date_any(t, formats)) return d->iso();
        throw CoercionError("unparseable date: '" + t + "'", "", t);
    }
    default: return t;
    }
}

namespace {

struct SchemaFailure {
    QaCode code;
    std::string detail;
};

BulletinRecordSet extract_one(const std::vector<PageGrids>& pages, const Date& date,
                              const TableSchema& schema, const Provenance& base,
                              const std::vector<std::string>& date_formats) {
    auto match = match_table(pages, schema);
    if (!match) throw SchemaFailure{QaCode::table_not_found, "no grid matches anchors"};
    const TableGrid& grid = *match->grid;

    BulletinRecordSet rs;
    rs.state_code = schema.state_code;
    rs.date = date;
    rs.sql_table = schema.sql_table;
    rs.provenance = base;
    rs.provenance.page_index = match->page_index;
    rs.provenance.method = grid.method;
    rs.provenance.region_source = grid.region_source;
    for (const ColumnSpec& col : schema.column_map) rs.columns.push_back(col.dest);

    auto coerce_cell = [&](const ColumnSpec& col, const std::string& text) -> Value {
        Value v;
        try {
            v = coerce(text, col.kind, date_formats);
        } catch (const CoercionError& e) {
            throw SchemaFailure{QaCode::coercion_failed, col.dest + ": " + e.what()};
        }
        if (col.required && std::holds_alternative<std::monostate>(v))
            throw SchemaFailure{QaCode::required_null, col.dest + " is null ('" + text + "')"};
        return v;
    };

    if (schema.orientation == Orientation::key_value) {
        if (grid.n_cols < 2)
            throw SchemaFailure{QaCode::coercion_failed, "key-value grid needs 2 columns"};
        std::vector<Value> row;
        for (const ColumnSpec& col : schema.column_map) {
            const std::string* phrase = std::get_if<std::string>(&col.source);
            if (!phrase)
                throw SchemaFailure{QaCode::coercion_failed,
                                    col.dest + ": key-value sources must be key phrases"};
            std::string want = normalize_header(*phrase);
            int best_row = -1;
            double best_sim = 0;
            for (int r = 0; r < grid.n_rows; ++r) {
                double sim = similarity(normalize_header(cell_text_at(grid, r, 0)), want);
                if (sim >= schema.anchor_threshold && sim > best_sim) {
                    best_row = r;
                    best_sim = sim;
                }
            }
            if (best_row < 0) {
                if (col.required)
                    throw SchemaFailure{QaCode::required_null, col.dest + ": key '" +
                                                                   *phrase + "' not found"};
                row.push_back(std::monostate{});
                continue;
            }
            row.push_back(coerce_cell(col, cell_text_at(grid, best_row, 1)));
        }
        rs.rows.push_back(std::move(row));
        return rs;
    }

    // Row-wise: resolve columns against the header, then walk data rows.
    std::vector<int> col_index;
    for (const ColumnSpec& col : schema.column_map) {
        int idx;
        if (const int* pos = std::get_if<int>(&col.source)) {
            idx = *pos >= 0 && *pos < grid.n_cols ? *pos : -1;
        } else {
            idx = resolve_column(grid, match->header_rows, std::get<std::string>(col.source),
                                 schema.anchor_threshold);
        }
        if (idx < 0 && col.required)
            throw SchemaFailure{QaCode::coercion_failed,
                                col.dest + ": source column not found"};
        col_index.push_back(idx);
    }

    // Raw data rows, with continuation rows folded into their parent when
    // the schema says so: a continuation has every non-text mapped cell
    // empty and at least one text cell filled.
    std::vector<std::vector<std::string>> raw;
    for (int r = match->header_rows; r < grid.n_rows; ++r) {
        std::vector<std::string> cells;
        for (size_t i = 0; i < schema.column_map.size(); ++i)
            cells.push_back(col_index[i] >= 0 ? cell_text_at(grid, r, col_index[i]) : "");
        bool continuation = false;
        if (schema.merge_continuation_rows && !raw.empty()) {
            bool non_text_empty = true, any_text = false;
            for (size_t i = 0; i < schema.column_map.size(); ++i) {
                if (schema.column_map[i].kind == ColumnKind::text) {
                    if (!trim(cells[i]).empty()) any_text = true;
                } else if (!trim(cells[i]).empty()) {
                    non_text_empty = false;
                }
            }
            continuation = non_text_empty && any_text;
        }
        if (continuation) {
            for (size_t i = 0; i < cells.size(); ++i) {
                if (trim(cells[i]).empty()) continue;
                std::string& prev = raw.back()[i];
                if (!prev.empty()) prev += " ";
                prev += trim(cells[i]);
            }
        } else {
            raw.push_back(std::move(cells));
        }
    }
    if (raw.empty())
        throw SchemaFailure{QaCode::table_not_found, "matched grid has no data rows"};

    for (const auto& cells : raw) {
        std::vector<Value> row;
        for (size_t i = 0; i < schema.column_map.size(); ++i)
            row.push_back(coerce_cell(schema.column_map[i], cells[i]));
        rs.rows.push_back(std::move(row));
    }
    return rs;
}

} // namespace

ExtractOutcome extract_records(const std::vector<PageGrids>& pages, const Date& date,
                               const std::vector<TableSchema>& schemas,
                               const Provenance& base,
                               const std::vector<std::string>& date_formats) {
    ExtractOutcome out;
    for (const TableSchema& schema : schemas) {
        try {
            out.recordsets.push_back(extract_one(pages, date, schema, base, date_formats));
        } catch (const SchemaFailure& f) {
            out.qa.push_back(QaRecord{schema.state_code, date, schema.sql_table,
                                      QaSeverity::error, f.code, f.detail});
        } catch (const AmbiguousMatch& e) {
            out.qa.push_back(QaRecord{schema.state_code, date, schema.sql_table,
                                      QaSeverity::error, QaCode::ambiguous_match, e.what()});
        }
    }
    return out;
}

std::vector<TableSchema> load_schema_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open schema file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("schema file " + path + ": " + e.what());
    }
    std::string state = j.at("state_code").get<std::string>();
    std::vector<TableSchema> out;
    std::set<std::string> ids;
    for (const auto& tj : j.at("tables")) {
        TableSchema s = schema_from_json(tj, state);
        if (!ids.insert(s.table_id).second)
            throw ConfigError(path + ": duplicate table_id " + s.table_id);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<TableSchema> load_schemas_for(const std::string& schema_dir,
                                          const std::string& state_code, const Date& date) {
    namespace fs = std::filesystem;
    fs::path dir = fs::path(schema_dir) / state_code;
    if (!fs::is_directory(dir))
        throw ConfigError("no schema directory for state " + state_code + " under " +
                          schema_dir);
    std::vector<std::pair<Date, fs::path>> versions;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        auto d = Date::from_iso(entry.path().stem().string());
        if (!d) throw ConfigError("schema version must be YYYY-MM-DD.json: " +
                                  entry.path().string());
        versions.emplace_back(*d, entry.path());
    }
    if (versions.empty()) throw ConfigError("no schema versions for " + state_code);
    std::sort(versions.begin(), versions.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    fs::path chosen = versions.front().second;
    for (const auto& [vd, path] : versions)
        if (vd <= date) chosen = path;
    return load_schema_file(chosen.string());
}

std::vector<TableSchema> load_all_schemas(const std::string& schema_dir) {
    namespace fs = std::filesystem;
    std::vector<TableSchema> out;
    std::set<std::string> seen; // sql_table
    if (!fs::is_directory(schema_dir))
        throw ConfigError("schema directory missing: " + schema_dir);
    std::vector<fs::path> states;
    for (const auto& entry : fs::directory_iterator(schema_dir))
        if (entry.is_directory()) states.push_back(entry.path());
    std::sort(states.begin(), states.end());
    for (const fs::path& dir : states) {
        std::vector<fs::path> files;
        for (const auto& f : fs::directory_iterator(dir))
            if (f.path().extension() == ".json") files.push_back(f.path());
        std::sort(files.begin(), files.end());
        for (const fs::path& f : files)
            for (TableSchema& s : load_schema_file(f.string()))
                if (seen.insert(s.sql_table).second) out.push_back(std::move(s));
    }
    return out;
}

const char* to_string(ColumnKind k) {
    switch (k) {
    case ColumnKind::integer: return "integer";
    case ColumnKind::real: return "real";
    case ColumnKind::text: return "text";
    case ColumnKind::date: return "date";
    }
    return "?";
}

} // namespace bulletin
