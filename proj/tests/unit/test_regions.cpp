#include "bulletin/forge.hpp"
#include "bulletin/regions.hpp"

#include <doctest.h>

using namespace bulletin;

TEST_CASE("propose_regions_heuristic: empty page and dense block") {
    PageModel page;
    page.width = 612;
    page.height = 792;
    CHECK(propose_regions_heuristic(page).empty());

    BBox expect{100, 100, 0, 0};
    double x = 100, y = 100;
    for (int i = 0; i < 6; ++i) {
        BBox b{x, y, x + 30, y + 10};
        page.runs.push_back(TextRun{b, "w", 1.0});
        expect = i ? bbox_union(expect, b) : b;
        x += 36;
        if (i == 2) {
            x = 100;
            y += 13;
        }
    }
    auto regions = propose_regions_heuristic(page, 10.0);
    REQUIRE(regions.size() == 1);
    CHECK(regions[0].region == expect);
    CHECK(regions[0].source == RegionOrigin::heuristic);
}

TEST_CASE("propose_regions_heuristic: blocks far apart separate; tiny groups dropped") {
    PageModel page;
    page.width = 612;
    page.height = 792;
    for (int i = 0; i < 4; ++i)
        page.runs.push_back(TextRun{BBox{50.0 + i * 40, 50, 80.0 + i * 40, 60}, "a", 1.0});
    for (int i = 0; i < 4; ++i)
        page.runs.push_back(TextRun{BBox{50.0 + i * 40, 100, 80.0 + i * 40, 110}, "b", 1.0});
    // Lone pair 300pt below: component of 2 < 4 runs, dropped.
    page.runs.push_back(TextRun{BBox{50, 400, 80, 410}, "x", 1.0});
    page.runs.push_back(TextRun{BBox{90, 400, 120, 410}, "y", 1.0});
    auto regions = propose_regions_heuristic(page, 12.0);
    REQUIRE(regions.size() == 2);
    CHECK(regions[0].region.y0 < regions[1].region.y0);
}

TEST_CASE("resolve_hints dedupes by IoU keeping higher confidence") {
    PageModel page;
    page.page_index = 0;
    page.width = 612;
    page.height = 792;
    std::vector<RegionHint> hints = {
        {0, BBox{100, 100, 300, 200}, 0.6, RegionOrigin::external},
        {0, BBox{102, 103, 298, 196}, 0.9, RegionOrigin::external}, // duplicate, better
        {0, BBox{100, 400, 300, 500}, 0.5, RegionOrigin::external},
        {1, BBox{100, 100, 300, 200}, 0.9, RegionOrigin::external}, // other page
    };
    auto resolved = resolve_hints(hints, page);
    REQUIRE(resolved.size() == 2);
    CHECK(resolved[0].region.y0 == doctest::Approx(103));
    CHECK(resolved[1].region.y0 == doctest::Approx(400));
}

TEST_CASE("detect_with_regions: no regions, no grids") {
    PageModel page;
    page.width = 612;
    page.height = 792;
    CHECK(detect_with_regions(page, {}).empty());
}

TEST_CASE("detect_with_regions dispatches ruled regions to lattice") {
    forge::TableConstraints c;
    c.n_rows = 3;
    c.n_cols = 3;
    c.ruled = true;
    auto [frag, manifest] = forge::gen_table(5, c);
    PageModel page = forge::fragment_page(frag);
    ResolvedRegion rr{manifest.region.inflated(4), RegionOrigin::external, 0};
    auto grids = detect_with_regions(page, {rr});
    REQUIRE(grids.size() == 1);
    CHECK(grids[0].method == DetectMethod::lattice);
    CHECK(grids[0].region_source == RegionOrigin::external);
    std::string why;
    CHECK_MESSAGE(forge::grid_matches_manifest(grids[0], manifest, &why), why);
}

TEST_CASE("appendix A2: exact hints recover all eight tables") {
    auto a2 = forge::gen_page_appendix_a2(42);
    auto regions = resolve_hints(a2.hints, a2.page);
    REQUIRE(regions.size() == 8);
    auto grids = detect_with_regions(a2.page, regions);
    REQUIRE(grids.size() == 8);

    size_t matched = 0;
    for (const auto& m : a2.manifests) {
        for (const auto& g : grids) {
            std::string why;
            if (forge::grid_matches_manifest(g, m, &why)) {
                ++matched;
                break;
            }
        }
    }
    CHECK(matched == 8);

    // Constraint containment: all source runs stay in their grid's region.
    for (const auto& g : grids)
        for (const Cell& cell : g.cells)
            for (size_t id : cell.source_runs) {
                const BBox& b = a2.page.runs[id].bbox;
                bool inside = false;
                for (const auto& r : regions)
                    if (r.region.contains(b.cx(), b.cy()) &&
                        r.region.intersects(g.region))
                        inside = true;
                CHECK(inside);
            }

    // The improvement property against unconstrained detection.
    auto unconstrained = detect_stream(a2.page);
    CHECK(unconstrained.size() <= 2);
    CHECK(grids.size() >= unconstrained.size());
}

TEST_CASE("appendix A2: any seven hints give exactly seven matches") {
    auto a2 = forge::gen_page_appendix_a2(42);
    for (size_t skip = 0; skip < 8; ++skip) {
        std::vector<RegionHint> seven;
        for (size_t i = 0; i < a2.hints.size(); ++i)
            if (i != skip) seven.push_back(a2.hints[i]);
        auto grids = detect_with_regions(a2.page, resolve_hints(seven, a2.page));
        CHECK(grids.size() == 7);
        size_t matched = 0;
        for (const auto& m : a2.manifests)
            for (const auto& g : grids) {
                std::string why;
                if (forge::grid_matches_manifest(g, m, &why)) {
                    ++matched;
                    break;
                }
            }
        CHECK(matched == 7);
    }
}

TEST_CASE("detect_page: lattice grid plus stream grid coexist") {
    forge::TableConstraints ruled;
    ruled.n_rows = 3;
    ruled.n_cols = 3;
    ruled.ruled = true;
    ruled.origin_y = 60;
    forge::TableConstraints unruled;
    unruled.n_rows = 4;
    unruled.n_cols = 3;
    unruled.origin_y = 400;
    auto [f1, m1] = forge::gen_table(31, ruled);
    auto [f2, m2] = forge::gen_table(33, unruled);
    PageModel page = forge::fragment_page(f1);
    page.runs.insert(page.runs.end(), f2.runs.begin(), f2.runs.end());
    page.lines.insert(page.lines.end(), f2.lines.begin(), f2.lines.end());

    auto grids = detect_page(page);
    REQUIRE(grids.size() == 2);
    CHECK(grids[0].method == DetectMethod::lattice);
    CHECK(grids[1].method == DetectMethod::stream);
    std::string why;
    CHECK_MESSAGE(forge::grid_matches_manifest(grids[0], m1, &why), why);
    CHECK_MESSAGE(forge::grid_matches_manifest(grids[1], m2, &why), why);
}
