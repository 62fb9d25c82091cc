#pragma once

#include "bulletin/dates.hpp"
#include "bulletin/geometry.hpp"
#include "bulletin/ingest.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bulletin::forge {

struct SpanRect {
    int row = 0, col = 0, row_span = 1, col_span = 1;
    bool operator==(const SpanRect&) const = default;
};

// Ground truth for one generated table. cell_texts holds anchor cells in
// row-major order; spanned positions appear once.
struct TableManifest {
    BBox region;
    bool ruled = false;
    int n_rows = 0, n_cols = 0;
    std::vector<std::string> cell_texts;
    double gutter = 0;
    std::vector<SpanRect> spans;
    // Cell geometry (n_rows+1 / n_cols+1 boundaries) so oracles can assign
    // runs by pure containment without rebuilding any detector logic.
    std::vector<double> row_edges;
    std::vector<double> col_edges;
};

struct TableConstraints {
    int n_rows = 0; // 0: seeded random in [2, max_rows]
    int n_cols = 0; // 0: seeded random in [2, max_cols]
    int max_rows = 8;
    int max_cols = 5;
    bool ruled = false;
    double min_gutter = 8.0;
    double origin_x = 50.0, origin_y = 60.0;
    double font_size = 9.0;
    double cell_pad = 3.0;
    double row_gap = 2.5; // unruled only; ruled rows share boundary lines
    bool allow_multiword = true;
    bool random_spans = false;            // ruled only
    std::vector<SpanRect> forced_spans;   // ruled only
};

struct PageFragment {
    std::vector<TextRun> runs;
    std::vector<RulingLine> lines;
};

// Deterministic in seed. Ruled tables emit RulingLines for every skeleton
// edge minus declared spans; unruled tables place runs with the declared
// gutter. Unsatisfiable constraints -> GenError.
std::pair<PageFragment, TableManifest> gen_table(std::uint64_t seed,
                                                 const TableConstraints& c);

struct A2Page {
    PageModel page;
    std::vector<TableManifest> manifests;
    std::vector<RegionHint> hints;
};

// Eight small unruled tables packed tightly enough that unconstrained
// stream detection merges them; the exact hints recover all eight.
A2Page gen_page_appendix_a2(std::uint64_t seed);

// Structural + textual equality against the manifest.
bool grid_matches_manifest(const TableGrid& grid, const TableManifest& m,
                           std::string* why = nullptr);

// Brute-force oracle: assigns each run to its manifest cell purely by
// geometric containment and rebuilds the texts. Independent of the
// detectors.
std::vector<std::string> manifest_texts_by_containment(const PageModel& page,
                                                       const TableManifest& m);

PageModel fragment_page(const PageFragment& frag, double width = 612,
                        double height = 792, int page_index = 0);

// Renders page models back to PDF bytes (Courier text, stroked rules).
std::string render_pdf(const std::vector<PageModel>& pages);

// Synthetic bulletin content for the end-to-end corpus.
struct BulletinValues {
    std::int64_t cumulative_confirmed = 0;
    std::int64_t cumulative_recovered = 0;
    std::int64_t cumulative_deceased = 0;
    std::int64_t active_cases = 0;
    std::int64_t daily_confirmed = 0;
    std::int64_t rtpcr_tests = 0;
    std::int64_t rat_tests = 0;
    std::int64_t total_tests = 0;
    std::int64_t occupied_beds = 0;
    std::int64_t total_beds = 0;
    std::int64_t vaccinated_today = 0;
    std::int64_t cumulative_vaccinated = 0;
    std::int64_t counselling_calls = 0; // WB only table

    // Corruption knobs for QA-path fixtures.
    bool total_tests_na = false;      // required cell reads "NA"
    bool duplicate_testing_table = false;
};

std::string render_bulletin_pdf(const std::string& state_code, const Date& date,
                                const BulletinValues& v);

// Deterministic per (state, date) values with plausible magnitudes.
BulletinValues synth_values(const std::string& state_code, const Date& date);

std::string manifest_to_json(const TableManifest& m);
TableManifest manifest_from_json(const std::string& json_text);

} // namespace bulletin::forge
