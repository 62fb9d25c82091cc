#include "bulletin/forge.hpp"

#include "bulletin/errors.hpp"
#include "bulletin/font_metrics.hpp"
#include "bulletin/pdf_writer.hpp"
#include "bulletin/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace bulletin::forge {

namespace {

constexpr double kWordGap = 3.0; // intra-cell gap, below any column channel
constexpr double kGutterFloor = 4.0;

const char* kLexicon[] = {"cases", "deaths",   "tests", "beds",  "total",   "daily",
                          "active", "zone",    "ward",  "count", "samples", "rate"};

std::string rand_word(SplitMix64& rng) {
    return kLexicon[rng.below(std::size(kLexicon))];
}

std::string format_indian(std::int64_t n) {
    std::string digits = std::to_string(n < 0 ? -n : n);
    if (digits.size() > 3) {
        std::string out = digits.substr(digits.size() - 3);
        std::string rest = digits.substr(0, digits.size() - 3);
        while (rest.size() > 2) {
            out = rest.substr(rest.size() - 2) + "," + out;
            rest = rest.substr(0, rest.size() - 2);
        }
        digits = rest + "," + out;
    }
    return (n < 0 ? "-" : "") + digits;
}

std::string rand_number(SplitMix64& rng) {
    std::int64_t v = rng.range(0, 999999);
    if (rng.below(4) == 0 && v > 999) return format_indian(v);
    return std::to_string(v);
}

std::string rand_cell_text(SplitMix64& rng, bool allow_multiword) {
    std::string t = rng.below(2) ? rand_word(rng) : rand_number(rng);
    if (allow_multiword && rng.below(10) < 3) t += " " + rand_word(rng);
    return t;
}

double cell_text_width(const std::string& text, double font_size) {
    double w = 0;
    size_t start = 0;
    bool first = true;
    while (start <= text.size()) {
        size_t sp = text.find(' ', start);
        std::string word = text.substr(start, sp == std::string::npos ? sp : sp - start);
        if (!word.empty()) {
            if (!first) w += kWordGap;
            w += FontMetrics::text_width("Courier", word, font_size);
            first = false;
        }
        if (sp == std::string::npos) break;
        start = sp + 1;
    }
    return w;
}

// Word-level runs for one cell text at (x, top).
void place_cell_text(PageFragment& frag, double x, double top, const std::string& text,
                     double font_size) {
    size_t start = 0;
    double cx = x;
    while (start <= text.size()) {
        size_t sp = text.find(' ', start);
        std::string word = text.substr(start, sp == std::string::npos ? sp : sp - start);
        if (!word.empty()) {
            double w = FontMetrics::text_width("Courier", word, font_size);
            frag.runs.push_back(
                TextRun{BBox{cx, top, cx + w, top + font_size}, word, 1.0});
            cx += w + kWordGap;
        }
        if (sp == std::string::npos) break;
        start = sp + 1;
    }
}

bool span_covers(const SpanRect& s, int r, int c) {
    return r >= s.row && r < s.row + s.row_span && c >= s.col && c < s.col + s.col_span;
}

bool spans_overlap(const SpanRect& a, const SpanRect& b) {
    return a.row < b.row + b.row_span && b.row < a.row + a.row_span &&
           a.col < b.col + b.col_span && b.col < a.col + a.col_span;
}

// A span set must never erase an entire internal boundary, otherwise the
// declared grid dimensions stop being recoverable from the ink.
bool spans_keep_boundaries(const std::vector<SpanRect>& spans, int rows, int cols) {
    for (int i = 1; i < rows; ++i) {
        std::vector<bool> erased(static_cast<size_t>(cols), false);
        for (const SpanRect& s : spans)
            if (s.row < i && i < s.row + s.row_span)
                for (int c = s.col; c < s.col + s.col_span; ++c)
                    erased[static_cast<size_t>(c)] = true;
        if (std::all_of(erased.begin(), erased.end(), [](bool b) { return b; })) return false;
    }
    for (int j = 1; j < cols; ++j) {
        std::vector<bool> erased(static_cast<size_t>(rows), false);
        for (const SpanRect& s : spans)
            if (s.col < j && j < s.col + s.col_span)
                for (int r = s.row; r < s.row + s.row_span; ++r)
                    erased[static_cast<size_t>(r)] = true;
        if (std::all_of(erased.begin(), erased.end(), [](bool b) { return b; })) return false;
    }
    return true;
}

int interval_of(const std::vector<double>& pos, double c) {
    if (pos.size() < 2 || c < pos.front() || c > pos.back()) return -1;
    auto it = std::lower_bound(pos.begin(), pos.end(), c);
    size_t idx = static_cast<size_t>(it - pos.begin());
    if (idx == 0) return 0;
    return static_cast<int>(idx) - 1;
}

// Builds a fragment table from explicit cell texts; returns its bbox and
// edge arrays. Shared by gen_table and the bulletin renderer.
struct BuiltTable {
    BBox region;
    std::vector<double> row_edges, col_edges;
};

BuiltTable build_table(PageFragment& frag, double x0, double y0,
                       const std::vector<std::vector<std::string>>& cell_texts,
                       const std::vector<SpanRect>& spans, bool ruled, double gutter,
                       double pad, double font_size, double row_gap) {
    int rows = static_cast<int>(cell_texts.size());
    int cols = rows ? static_cast<int>(cell_texts[0].size()) : 0;

    std::vector<double> col_w(static_cast<size_t>(cols), font_size); // floor width
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            col_w[static_cast<size_t>(c)] = std::max(
                col_w[static_cast<size_t>(c)], cell_text_width(cell_texts[static_cast<size_t>(r)][static_cast<size_t>(c)], font_size));

    BuiltTable out;
    double x = x0;
    out.col_edges.push_back(x);
    for (int c = 0; c < cols; ++c) {
        x += 2 * pad + col_w[static_cast<size_t>(c)];
        if (!ruled && c + 1 < cols) x += gutter;
        out.col_edges.push_back(x);
    }
    double pitch = font_size + 2 * pad + (ruled ? 0.0 : row_gap);
    out.row_edges.push_back(y0);
    if (ruled) {
        for (int r = 1; r <= rows; ++r) out.row_edges.push_back(y0 + r * pitch);
    } else {
        // Internal edges sit on the gap midline, keeping containment
        // symmetric.
        for (int r = 1; r < rows; ++r)
            out.row_edges.push_back(y0 + r * pitch - row_gap / 2);
        out.row_edges.push_back(y0 + (rows - 1) * pitch + font_size + 2 * pad);
    }

    for (int r = 0; r < rows; ++r) {
        double top = y0 + r * pitch + pad;
        for (int c = 0; c < cols; ++c) {
            bool is_anchor = true;
            for (const SpanRect& s : spans)
                if (span_covers(s, r, c) && !(s.row == r && s.col == c)) is_anchor = false;
            if (!is_anchor) continue;
            const std::string& text = cell_texts[static_cast<size_t>(r)][static_cast<size_t>(c)];
            if (!text.empty())
                place_cell_text(frag, out.col_edges[static_cast<size_t>(c)] + pad, top, text,
                                font_size);
        }
    }

    if (ruled) {
        double thickness = 1.0;
        for (int i = 0; i <= rows; ++i) {
            // Maximal contiguous segments not interior to a span.
            int c = 0;
            while (c < cols) {
                bool interior = false;
                for (const SpanRect& s : spans)
                    if (s.row < i && i < s.row + s.row_span && c >= s.col &&
                        c < s.col + s.col_span)
                        interior = true;
                if (interior) {
                    ++c;
                    continue;
                }
                int c2 = c;
                while (c2 < cols) {
                    bool in2 = false;
                    for (const SpanRect& s : spans)
                        if (s.row < i && i < s.row + s.row_span && c2 >= s.col &&
                            c2 < s.col + s.col_span)
                            in2 = true;
                    if (in2) break;
                    ++c2;
                }
                frag.lines.push_back(RulingLine{Axis::horizontal,
                                                out.row_edges[static_cast<size_t>(i)],
                                                out.col_edges[static_cast<size_t>(c)],
                                                out.col_edges[static_cast<size_t>(c2)], thickness});
                c = c2;
            }
        }
        for (int j = 0; j <= cols; ++j) {
            int r = 0;
            while (r < rows) {
                bool interior = false;
                for (const SpanRect& s : spans)
                    if (s.col < j && j < s.col + s.col_span && r >= s.row &&
                        r < s.row + s.row_span)
                        interior = true;
                if (interior) {
                    ++r;
                    continue;
                }
                int r2 = r;
                while (r2 < rows) {
                    bool in2 = false;
                    for (const SpanRect& s : spans)
                        if (s.col < j && j < s.col + s.col_span && r2 >= s.row &&
                            r2 < s.row + s.row_span)
                            in2 = true;
                    if (in2) break;
                    ++r2;
                }
                frag.lines.push_back(RulingLine{Axis::vertical,
                                                out.col_edges[static_cast<size_t>(j)],
                                                out.row_edges[static_cast<size_t>(r)],
                                                out.row_edges[static_cast<size_t>(r2)], thickness});
                r = r2;
            }
        }
    }

    out.region = BBox{out.col_edges.front(), out.row_edges.front(), out.col_edges.back(),
                      out.row_edges.back()};
    return out;
}

} // namespace

std::pair<PageFragment, TableManifest> gen_table(std::uint64_t seed,
                                                 const TableConstraints& c) {
    SplitMix64 rng(seed);
    int rows = c.n_rows > 0 ? c.n_rows : static_cast<int>(rng.range(2, c.max_rows));
    int cols = c.n_cols > 0 ? c.n_cols : static_cast<int>(rng.range(2, c.max_cols));
    if (rows < 2 || rows > 30 || cols < 2 || cols > 12)
        throw GenError("table size out of range: " + std::to_string(rows) + "x" +
                       std::to_string(cols));
    if (c.min_gutter < kGutterFloor)
        throw GenError("gutter below floor");
    if (!c.ruled && (c.random_spans || !c.forced_spans.empty()))
        throw GenError("spans require a ruled table");
    if (!c.ruled && c.row_gap < 2.0)
        throw GenError("unruled rows need a gap of at least 2pt");

    std::vector<SpanRect> spans = c.forced_spans;
    for (const SpanRect& s : spans) {
        if (s.row < 0 || s.col < 0 || s.row_span < 1 || s.col_span < 1 ||
            s.row + s.row_span > rows || s.col + s.col_span > cols ||
            (s.row_span == 1 && s.col_span == 1))
            throw GenError("forced span out of range");
        if (s.row_span >= rows && s.col_span >= cols) throw GenError("span covers table");
    }
    for (size_t i = 0; i < spans.size(); ++i)
        for (size_t j = i + 1; j < spans.size(); ++j)
            if (spans_overlap(spans[i], spans[j])) throw GenError("forced spans overlap");
    if (!spans_keep_boundaries(spans, rows, cols))
        throw GenError("forced spans erase a grid boundary");

    if (c.random_spans) {
        int attempts = static_cast<int>(rng.range(1, 3));
        for (int a = 0; a < attempts; ++a) {
            SpanRect s;
            int shape = static_cast<int>(rng.below(3));
            s.row_span = shape == 0 ? 1 : 2;
            s.col_span = shape == 1 ? 1 : 2;
            if (s.row_span >= rows || s.col_span >= cols) continue;
            s.row = static_cast<int>(rng.range(0, rows - s.row_span));
            s.col = static_cast<int>(rng.range(0, cols - s.col_span));
            bool clash = false;
            for (const SpanRect& other : spans)
                if (spans_overlap(s, other)) clash = true;
            if (clash) continue;
            std::vector<SpanRect> trial = spans;
            trial.push_back(s);
            if (!spans_keep_boundaries(trial, rows, cols)) continue;
            spans = std::move(trial);
        }
    }

    double gutter = c.ruled ? 0.0
                            : c.min_gutter + static_cast<double>(rng.range(0, 6));

    std::vector<std::vector<std::string>> texts(
        static_cast<size_t>(rows), std::vector<std::string>(static_cast<size_t>(cols)));
    TableManifest m;
    for (int r = 0; r < rows; ++r)
        for (int col = 0; col < cols; ++col) {
            bool anchor = true, covered = false;
            for (const SpanRect& s : spans)
                if (span_covers(s, r, col)) {
                    covered = true;
                    anchor = s.row == r && s.col == col;
                }
            if (covered && !anchor) continue;
            std::string t = rand_cell_text(rng, c.allow_multiword && !c.ruled ? true
                                                                              : c.allow_multiword);
            texts[static_cast<size_t>(r)][static_cast<size_t>(col)] = t;
            m.cell_texts.push_back(t);
        }

    PageFragment frag;
    BuiltTable built = build_table(frag, c.origin_x, c.origin_y, texts, spans, c.ruled,
                                   gutter, c.cell_pad, c.font_size, c.row_gap);
    m.region = built.region;
    m.ruled = c.ruled;
    m.n_rows = rows;
    m.n_cols = cols;
    m.gutter = gutter;
    m.spans = spans;
    m.row_edges = built.row_edges;
    m.col_edges = built.col_edges;
    return {std::move(frag), std::move(m)};
}

A2Page gen_page_appendix_a2(std::uint64_t seed) {
    SplitMix64 rng(seed);
    const double font = 9.0, pad = 3.0, gutter = 8.0, row_gap = 2.5;
    const double pitch = font + 2 * pad + row_gap; // 17.5
    const int pair_rows[4] = {3, 4, 5, 3};
    const double token_chars = 6;
    const double token_w = token_chars * 0.6 * font; // Courier
    const double col_w = 2 * pad + token_w;
    const double table_w = 3 * col_w + 2 * gutter;

    auto token = [&rng]() {
        std::string t;
        for (int i = 0; i < 6; ++i)
            t.push_back(static_cast<char>('a' + rng.below(26)));
        return t;
    };

    A2Page out;
    out.page.page_index = 0;
    out.page.width = 612;
    out.page.height = 792;

    double y = 60;
    for (int p = 0; p < 4; ++p) {
        int rows = pair_rows[p];
        double stagger = 12.0 * p;
        for (int side = 0; side < 2; ++side) {
            double x0 = (side == 0 ? 40.0 : 330.0) + stagger;
            std::vector<std::vector<std::string>> texts(
                static_cast<size_t>(rows), std::vector<std::string>(3));
            TableManifest m;
            m.ruled = false;
            m.n_rows = rows;
            m.n_cols = 3;
            m.gutter = gutter;
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < 3; ++c) {
                    texts[static_cast<size_t>(r)][static_cast<size_t>(c)] = token();
                    m.cell_texts.push_back(texts[static_cast<size_t>(r)][static_cast<size_t>(c)]);
                }
            PageFragment frag;
            BuiltTable built =
                build_table(frag, x0, y, texts, {}, false, gutter, pad, font, row_gap);
            m.region = built.region;
            m.row_edges = built.row_edges;
            m.col_edges = built.col_edges;
            out.page.runs.insert(out.page.runs.end(), frag.runs.begin(), frag.runs.end());
            out.manifests.push_back(std::move(m));
            out.hints.push_back(RegionHint{0, built.region.inflated(2.0), 0.9,
                                           RegionOrigin::external});
        }
        // Next pair starts close enough that bands stay in one block.
        y += (rows - 1) * pitch + (font + 2 * pad) + 10.0;
    }
    (void)table_w;
    return out;
}

bool grid_matches_manifest(const TableGrid& grid, const TableManifest& m, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (grid.n_rows != m.n_rows || grid.n_cols != m.n_cols)
        return fail("size " + std::to_string(grid.n_rows) + "x" + std::to_string(grid.n_cols) +
                    " != " + std::to_string(m.n_rows) + "x" + std::to_string(m.n_cols));
    std::vector<SpanRect> got;
    for (const Cell& c : grid.cells)
        if (c.row_span > 1 || c.col_span > 1)
            got.push_back(SpanRect{c.row, c.col, c.row_span, c.col_span});
    std::vector<SpanRect> want = m.spans;
    auto key = [](const SpanRect& s) { return std::tuple(s.row, s.col, s.row_span, s.col_span); };
    std::sort(got.begin(), got.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
    std::sort(want.begin(), want.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
    if (got != want) return fail("span sets differ");
    std::vector<std::string> texts = grid.texts_row_major();
    if (texts.size() != m.cell_texts.size())
        return fail("anchor count " + std::to_string(texts.size()) + " != " +
                    std::to_string(m.cell_texts.size()));
    for (size_t i = 0; i < texts.size(); ++i)
        if (texts[i] != m.cell_texts[i])
            return fail("cell " + std::to_string(i) + ": '" + texts[i] + "' != '" +
                        m.cell_texts[i] + "'");
    return true;
}

std::vector<std::string> manifest_texts_by_containment(const PageModel& page,
                                                       const TableManifest& m) {
    struct Hit {
        double cy, x0;
        const std::string* text;
    };
    std::map<std::pair<int, int>, std::vector<Hit>> by_anchor;
    for (const TextRun& run : page.runs) {
        double cx = run.bbox.cx(), cy = run.bbox.cy();
        if (!m.region.inflated(0.01).contains(cx, cy)) continue;
        int row = interval_of(m.row_edges, cy);
        int col = interval_of(m.col_edges, cx);
        if (row < 0 || col < 0) continue;
        for (const SpanRect& s : m.spans)
            if (span_covers(s, row, col)) {
                row = s.row;
                col = s.col;
                break;
            }
        by_anchor[{row, col}].push_back(Hit{cy, run.bbox.x0, &run.text});
    }
    std::vector<std::string> out;
    for (int r = 0; r < m.n_rows; ++r)
        for (int c = 0; c < m.n_cols; ++c) {
            bool anchor = true, covered = false;
            for (const SpanRect& s : m.spans)
                if (span_covers(s, r, c)) {
                    covered = true;
                    anchor = s.row == r && s.col == c;
                }
            if (covered && !anchor) continue;
            auto it = by_anchor.find({r, c});
            std::string text;
            if (it != by_anchor.end()) {
                std::sort(it->second.begin(), it->second.end(), [](const Hit& a, const Hit& b) {
                    return std::pair(a.cy, a.x0) < std::pair(b.cy, b.x0);
                });
                for (const Hit& h : it->second) {
                    if (!text.empty()) text += " ";
                    text += *h.text;
                }
            }
            out.push_back(std::move(text));
        }
    return out;
}

PageModel fragment_page(const PageFragment& frag, double width, double height,
                        int page_index) {
    PageModel page;
    page.page_index = page_index;
    page.width = width;
    page.height = height;
    page.runs = frag.runs;
    page.lines = frag.lines;
    return page;
}

std::string render_pdf(const std::vector<PageModel>& pages) {
    if (pages.empty()) return PdfWriter(612, 792).finish();
    PdfWriter w(pages.front().width, pages.front().height);
    for (const PageModel& p : pages) {
        w.begin_page();
        for (const TextRun& r : p.runs)
            w.add_word(r.bbox.x0, r.bbox.y0, r.text, r.bbox.height());
        for (const RulingLine& l : p.lines) w.add_line(l);
    }
    return w.finish();
}

BulletinValues synth_values(const std::string& state_code, const Date& date) {
    std::uint64_t key = std::hash<std::string>{}(state_code);
    std::int64_t day = date.days() - Date(2020, 3, 1).days();
    SplitMix64 rng(key * 1000003ull + 17ull);
    std::int64_t base = 200000 + static_cast<std::int64_t>(rng.below(300000));
    std::int64_t daily = 900 + static_cast<std::int64_t>(rng.below(900));

    BulletinValues v;
    v.daily_confirmed = daily + (day % 7) * 15;
    v.cumulative_confirmed = base + day * daily + (day * (day % 7) * 15) / 2;
    v.cumulative_deceased = v.cumulative_confirmed / 60;
    v.cumulative_recovered = v.cumulative_confirmed - v.cumulative_deceased -
                             (8000 + (day % 5) * 250);
    v.active_cases = v.cumulative_confirmed - v.cumulative_recovered - v.cumulative_deceased;
    v.rtpcr_tests = 30000 + (day % 11) * 700;
    v.rat_tests = 24000 + (day % 7) * 500;
    v.total_tests = v.rtpcr_tests + v.rat_tests;
    v.total_beds = 18000 + static_cast<std::int64_t>(rng.below(4000));
    v.occupied_beds = std::min(v.total_beds, v.active_cases / 3 + (day % 9) * 40);
    v.vaccinated_today = 40000 + (day % 13) * 1100;
    v.cumulative_vaccinated = 500000 + day * 42000;
    v.counselling_calls = 300 + (day % 17) * 9;
    return v;
}

std::string render_bulletin_pdf(const std::string& state_code, const Date& date,
                                const BulletinValues& v) {
    const double font = 9.0, pad = 3.0, gutter = 8.0, row_gap = 2.5;
    PageFragment frag;

    std::string state_name = state_code == "DL"   ? "Delhi"
                             : state_code == "WB" ? "West Bengal"
                                                  : state_code;
    place_cell_text(frag, 150, 36, state_name + " State Health Bulletin", 12);
    place_cell_text(frag, 150, 54, "Date " + date.iso(), 10);

    auto title = [&](double y, const std::string& text) {
        place_cell_text(frag, 50, y, text, 10);
    };
    auto num = [](std::int64_t n) { return std::to_string(n); };

    // Case information: a ruled key-value table.
    title(92, "COVID-19 Case Status");
    std::vector<std::vector<std::string>> case_rows = {
        {"Confirmed Cases", format_indian(v.cumulative_confirmed)},
        {"Recovered", num(v.cumulative_recovered)},
        {"Deaths", num(v.cumulative_deceased)},
        {"Active Cases", num(v.active_cases)},
        {"Daily New Cases", num(v.daily_confirmed)},
    };
    build_table(frag, 50, 116, case_rows, {}, true, 0, pad, font, row_gap);

    // Testing: unruled header + one data row.
    title(240, "Testing Status");
    std::vector<std::vector<std::string>> testing = {
        {"RT-PCR Tests", "RAT Tests", "Total Tests"},
        {num(v.rtpcr_tests), num(v.rat_tests),
         v.total_tests_na ? std::string("NA") : num(v.total_tests)},
    };
    build_table(frag, 50, 264, testing, {}, false, gutter, pad, font, row_gap);
    if (v.duplicate_testing_table)
        build_table(frag, 50, 330, testing, {}, false, gutter, pad, font, row_gap);

    // Hospitalization.
    title(392, "Hospital Bed Status");
    std::vector<std::vector<std::string>> beds = {
        {"Occupied Beds", "Total Beds"},
        {num(v.occupied_beds), num(v.total_beds)},
    };
    build_table(frag, 50, 416, beds, {}, false, gutter, pad, font, row_gap);

    // Vaccination.
    title(488, "Vaccination Status");
    std::vector<std::vector<std::string>> vax = {
        {"Vaccinated Today", "Cumulative Vaccinated"},
        {num(v.vaccinated_today), format_indian(v.cumulative_vaccinated)},
    };
    build_table(frag, 50, 512, vax, {}, false, gutter, pad, font, row_gap);

    if (state_code == "WB") {
        title(584, "Mental Health Counselling");
        std::vector<std::vector<std::string>> mh = {
            {"Counselling Calls", num(v.counselling_calls)},
            {"Cumulative Calls", num(v.counselling_calls * 9)},
        };
        build_table(frag, 50, 608, mh, {}, false, gutter, pad, font, row_gap);
    }

    return render_pdf({fragment_page(frag)});
}

std::string manifest_to_json(const TableManifest& m) {
    nlohmann::json spans = nlohmann::json::array();
    for (const SpanRect& s : m.spans)
        spans.push_back({{"row", s.row},
                         {"col", s.col},
                         {"row_span", s.row_span},
                         {"col_span", s.col_span}});
    nlohmann::json j{{"region", {m.region.x0, m.region.y0, m.region.x1, m.region.y1}},
                     {"ruled", m.ruled},
                     {"n_rows", m.n_rows},
                     {"n_cols", m.n_cols},
                     {"cell_texts", m.cell_texts},
                     {"gutter", m.gutter},
                     {"spans", spans},
                     {"row_edges", m.row_edges},
                     {"col_edges", m.col_edges}};
    return j.dump();
}

TableManifest manifest_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    TableManifest m;
    auto r = j.at("region");
    m.region = BBox{r.at(0).get<double>(), r.at(1).get<double>(), r.at(2).get<double>(),
                    r.at(3).get<double>()};
    m.ruled = j.at("ruled").get<bool>();
    m.n_rows = j.at("n_rows").get<int>();
    m.n_cols = j.at("n_cols").get<int>();
    m.cell_texts = j.at("cell_texts").get<std::vector<std::string>>();
    m.gutter = j.at("gutter").get<double>();
    for (const auto& s : j.at("spans"))
        m.spans.push_back(SpanRect{s.at("row").get<int>(), s.at("col").get<int>(),
                                   s.at("row_span").get<int>(), s.at("col_span").get<int>()});
    m.row_edges = j.at("row_edges").get<std::vector<double>>();
    m.col_edges = j.at("col_edges").get<std::vector<double>>();
    return m;
}

} // namespace bulletin::forge
