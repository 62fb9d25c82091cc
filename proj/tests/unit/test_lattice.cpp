#include "bulletin/forge.hpp"
#include "bulletin/lattice.hpp"

#include <doctest.h>

using namespace bulletin;

namespace {

PageModel grid_page(std::uint64_t seed, forge::TableConstraints c, forge::TableManifest* m) {
    auto [frag, manifest] = forge::gen_table(seed, c);
    if (m) *m = manifest;
    return forge::fragment_page(frag);
}

} // namespace

TEST_CASE("merge_lines: single line unchanged") {
    std::vector<RulingLine> in = {RulingLine{Axis::horizontal, 100, 10, 200, 1}};
    auto out = merge_lines(in, 2.0);
    REQUIRE(out.size() == 1);
    CHECK(out[0].position == doctest::Approx(100));
    CHECK(out[0].start == doctest::Approx(10));
    CHECK(out[0].end == doctest::Approx(200));
}

TEST_CASE("merge_lines: dashed line fuses, parallel lines stay apart") {
    // 5 dashes of 10pt with 2pt gaps: gaps <= 3*snap_tol merge.
    std::vector<RulingLine> dashes;
    for (int i = 0; i < 5; ++i)
        dashes.push_back(RulingLine{Axis::horizontal, 50, 10.0 + i * 12, 20.0 + i * 12, 1});
    auto merged = merge_lines(dashes, 2.0);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].start == doctest::Approx(10));
    CHECK(merged[0].end == doctest::Approx(68));

    std::vector<RulingLine> parallel = {RulingLine{Axis::horizontal, 50, 10, 100, 1},
                                        RulingLine{Axis::horizontal, 70, 10, 100, 1}};
    CHECK(merge_lines(parallel, 2.0).size() == 2);
}

TEST_CASE("merge_lines: jittered positions snap together") {
    std::vector<RulingLine> in = {RulingLine{Axis::vertical, 99.2, 0, 100, 1},
                                  RulingLine{Axis::vertical, 100.5, 90, 220, 1}};
    auto out = merge_lines(in, 2.0);
    REQUIRE(out.size() == 1);
    CHECK(out[0].start == doctest::Approx(0));
    CHECK(out[0].end == doctest::Approx(220));
}

TEST_CASE("detect_lattice: page without lines yields nothing") {
    PageModel page;
    page.width = 612;
    page.height = 792;
    page.runs.push_back(TextRun{BBox{10, 10, 40, 20}, "loose", 1.0});
    CHECK(detect_lattice(page).empty());
}

TEST_CASE("detect_lattice recovers a clean 4x3 grid against the manifest") {
    forge::TableConstraints c;
    c.n_rows = 4;
    c.n_cols = 3;
    c.ruled = true;
    forge::TableManifest m;
    PageModel page = grid_page(7, c, &m);
    auto grids = detect_lattice(page);
    REQUIRE(grids.size() == 1);
    CHECK(grids[0].method == DetectMethod::lattice);
    std::string why;
    CHECK_MESSAGE(forge::grid_matches_manifest(grids[0], m, &why), why);
    validate_grid(grids[0]);
    // 5 horizontal + 4 vertical boundary lines in the fixture.
    CHECK(page.lines.size() == 9);
}

TEST_CASE("removing the edge between header cells produces a col_span=2 cell") {
    forge::TableConstraints c;
    c.n_rows = 4;
    c.n_cols = 3;
    c.ruled = true;
    c.forced_spans = {forge::SpanRect{0, 0, 1, 2}};
    forge::TableManifest m;
    PageModel page = grid_page(9, c, &m);
    auto grids = detect_lattice(page);
    REQUIRE(grids.size() == 1);
    const Cell* top_left = grids[0].cell_at(0, 0);
    REQUIRE(top_left != nullptr);
    CHECK(top_left->col_span == 2);
    CHECK(top_left->row_span == 1);
    std::string why;
    CHECK_MESSAGE(forge::grid_matches_manifest(grids[0], m, &why), why);
}

TEST_CASE("two disjoint ruled grids on one page come out top-first") {
    forge::TableConstraints top;
    top.n_rows = 3;
    top.n_cols = 3;
    top.ruled = true;
    top.origin_y = 60;
    forge::TableConstraints bottom = top;
    bottom.origin_y = 400;
    auto [f1, m1] = forge::gen_table(1, top);
    auto [f2, m2] = forge::gen_table(2, bottom);
    PageModel page = forge::fragment_page(f1);
    page.runs.insert(page.runs.end(), f2.runs.begin(), f2.runs.end());
    page.lines.insert(page.lines.end(), f2.lines.begin(), f2.lines.end());

    auto grids = detect_lattice(page);
    REQUIRE(grids.size() == 2);
    CHECK(grids[0].region.y0 < grids[1].region.y0);
    std::string why;
    CHECK_MESSAGE(forge::grid_matches_manifest(grids[0], m1, &why), why);
    CHECK_MESSAGE(forge::grid_matches_manifest(grids[1], m2, &why), why);
}

TEST_CASE("single ruled row is a banner, not a table") {
    PageModel page;
    page.width = 612;
    page.height = 792;
    page.lines.push_back(RulingLine{Axis::horizontal, 50, 50, 300, 1});
    page.lines.push_back(RulingLine{Axis::horizontal, 70, 50, 300, 1});
    page.lines.push_back(RulingLine{Axis::vertical, 50, 50, 70, 1});
    page.lines.push_back(RulingLine{Axis::vertical, 300, 50, 70, 1});
    CHECK(detect_lattice(page).empty());
}

TEST_CASE("lattice oracle equivalence over random ruled tables") {
    int checked = 0;
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        forge::TableConstraints c;
        c.ruled = true;
        c.random_spans = seed % 2 == 0;
        forge::TableManifest m;
        PageModel page = grid_page(seed, c, &m);
        auto grids = detect_lattice(page);
        REQUIRE(grids.size() == 1);
        std::string why;
        CHECK_MESSAGE(forge::grid_matches_manifest(grids[0], m, &why),
                      "seed ", seed, ": ", why);
        validate_grid(grids[0]);
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("translation invariance") {
    forge::TableConstraints c;
    c.n_rows = 3;
    c.n_cols = 4;
    c.ruled = true;
    forge::TableManifest m;
    PageModel page = grid_page(21, c, &m);
    auto base = detect_lattice(page);

    PageModel shifted = page;
    for (auto& r : shifted.runs) {
        r.bbox.x0 += 30;
        r.bbox.x1 += 30;
        r.bbox.y0 += 40;
        r.bbox.y1 += 40;
    }
    for (auto& l : shifted.lines) {
        l.position += l.axis == Axis::horizontal ? 40 : 30;
        l.start += l.axis == Axis::horizontal ? 30 : 40;
        l.end += l.axis == Axis::horizontal ? 30 : 40;
    }
    auto moved = detect_lattice(shifted);
    REQUIRE(base.size() == moved.size());
    REQUIRE(base.size() == 1);
    CHECK(moved[0].region.x0 == doctest::Approx(base[0].region.x0 + 30));
    CHECK(moved[0].region.y0 == doctest::Approx(base[0].region.y0 + 40));
    CHECK(moved[0].texts_row_major() == base[0].texts_row_major());
}
