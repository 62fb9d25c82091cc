#include "bulletin/errors.hpp"
#include "bulletin/forge.hpp"

#include <doctest.h>

using namespace bulletin;

TEST_CASE("gen_table is deterministic in the seed") {
    forge::TableConstraints c;
    auto [f1, m1] = forge::gen_table(99, c);
    auto [f2, m2] = forge::gen_table(99, c);
    REQUIRE(f1.runs.size() == f2.runs.size());
    for (size_t i = 0; i < f1.runs.size(); ++i) {
        CHECK(f1.runs[i].text == f2.runs[i].text);
        CHECK(f1.runs[i].bbox == f2.runs[i].bbox);
    }
    CHECK(m1.cell_texts == m2.cell_texts);
    auto [f3, m3] = forge::gen_table(100, c);
    CHECK(m3.cell_texts != m1.cell_texts); // different seed, different table
}

TEST_CASE("ruled 4x3 grid emits 5+4 boundary lines") {
    forge::TableConstraints c;
    c.n_rows = 4;
    c.n_cols = 3;
    c.ruled = true;
    auto [frag, m] = forge::gen_table(4, c);
    int horizontal = 0, vertical = 0;
    for (const RulingLine& l : frag.lines)
        (l.axis == Axis::horizontal ? horizontal : vertical)++;
    CHECK(horizontal == 5);
    CHECK(vertical == 4);
    CHECK(m.cell_texts.size() == 12);
}

TEST_CASE("unruled table respects the declared gutter") {
    forge::TableConstraints c;
    c.n_rows = 5;
    c.n_cols = 4;
    c.min_gutter = 12;
    auto [frag, m] = forge::gen_table(8, c);
    CHECK(m.gutter >= 12);
    // Gap between consecutive column edges is at least the gutter.
    for (size_t k = 0; k + 1 < m.col_edges.size() - 1; ++k) {
        double col_end = m.col_edges[k + 1] - m.gutter;
        CHECK(col_end > m.col_edges[k]);
    }
    CHECK(m.cell_texts.size() == 20);
    CHECK(m.spans.empty());
}

TEST_CASE("unsatisfiable constraints raise GenError") {
    forge::TableConstraints c;
    c.n_rows = 31;
    CHECK_THROWS_AS(forge::gen_table(1, c), GenError);
    forge::TableConstraints g;
    g.min_gutter = 1.0;
    CHECK_THROWS_AS(forge::gen_table(1, g), GenError);
    forge::TableConstraints s;
    s.forced_spans = {forge::SpanRect{0, 0, 1, 2}};
    CHECK_THROWS_AS(forge::gen_table(1, s), GenError); // spans need rules
    forge::TableConstraints e;
    e.ruled = true;
    e.n_rows = 2;
    e.n_cols = 2;
    e.forced_spans = {forge::SpanRect{0, 0, 2, 2}};
    CHECK_THROWS_AS(forge::gen_table(1, e), GenError); // span covers the table
}

TEST_CASE("oracle soundness: containment re-parse reproduces cell_texts") {
    for (std::uint64_t seed = 900; seed < 930; ++seed) {
        forge::TableConstraints c;
        c.ruled = seed % 2 == 0;
        c.random_spans = c.ruled;
        auto [frag, m] = forge::gen_table(seed, c);
        PageModel page = forge::fragment_page(frag);
        CHECK(forge::manifest_texts_by_containment(page, m) == m.cell_texts);
    }
}

TEST_CASE("manifest json round trip") {
    forge::TableConstraints c;
    c.ruled = true;
    c.random_spans = true;
    auto [frag, m] = forge::gen_table(1234, c);
    forge::TableManifest back = forge::manifest_from_json(forge::manifest_to_json(m));
    CHECK(back.n_rows == m.n_rows);
    CHECK(back.n_cols == m.n_cols);
    CHECK(back.cell_texts == m.cell_texts);
    CHECK(back.spans == m.spans);
    CHECK(back.row_edges == m.row_edges);
    CHECK(back.ruled == m.ruled);
}

TEST_CASE("a2 page structure") {
    auto a2 = forge::gen_page_appendix_a2(42);
    CHECK(a2.manifests.size() == 8);
    CHECK(a2.hints.size() == 8);
    for (const auto& m : a2.manifests) {
        CHECK(m.n_cols == 3);
        CHECK(m.n_rows >= 3);
        CHECK(!m.ruled);
    }
    // Hints pre-sorted acceptance: hint boxes sit inside the page.
    for (const auto& h : a2.hints) {
        CHECK(h.region.x1 <= a2.page.width);
        CHECK(h.region.y1 <= a2.page.height);
    }
    // Determinism.
    auto again = forge::gen_page_appendix_a2(42);
    REQUIRE(again.page.runs.size() == a2.page.runs.size());
    for (size_t i = 0; i < a2.page.runs.size(); ++i)
        CHECK(again.page.runs[i].text == a2.page.runs[i].text);
}

TEST_CASE("synth bulletin values are internally consistent") {
    auto v = forge::synth_values("DL", Date(2021, 4, 15));
    CHECK(v.total_tests == v.rtpcr_tests + v.rat_tests);
    CHECK(v.active_cases ==
          v.cumulative_confirmed - v.cumulative_recovered - v.cumulative_deceased);
    CHECK(v.occupied_beds <= v.total_beds);
    // Deterministic per (state, date).
    auto w = forge::synth_values("DL", Date(2021, 4, 15));
    CHECK(v.cumulative_confirmed == w.cumulative_confirmed);
    auto x = forge::synth_values("WB", Date(2021, 4, 15));
    CHECK(v.cumulative_confirmed != x.cumulative_confirmed);
}
