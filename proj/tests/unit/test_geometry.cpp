#include "bulletin/geometry.hpp"
#include "bulletin/rng.hpp"

#include <doctest.h>

#include <algorithm>

using namespace bulletin;

namespace {

BBox rand_box(SplitMix64& rng) {
    double x0 = rng.unit() * 500, y0 = rng.unit() * 700;
    return BBox{x0, y0, x0 + rng.unit() * 100, y0 + rng.unit() * 100};
}

// Brute-force reference: min/max over all coordinates at once.
BBox union_all(const std::vector<BBox>& boxes) {
    BBox out = boxes.front();
    for (const BBox& b : boxes) {
        out.x0 = std::min(out.x0, b.x0);
        out.y0 = std::min(out.y0, b.y0);
        out.x1 = std::max(out.x1, b.x1);
        out.y1 = std::max(out.y1, b.y1);
    }
    return out;
}

} // namespace

TEST_CASE("bbox_union basics") {
    BBox a{0, 0, 1, 1};
    CHECK(bbox_union(a, a) == a);
    CHECK(bbox_union(a, BBox{2, 2, 3, 3}) == BBox{0, 0, 3, 3});
}

TEST_CASE("bbox_union equals fold of pairwise unions in any order") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<BBox> boxes;
        int n = 2 + static_cast<int>(rng.below(8));
        for (int i = 0; i < n; ++i) boxes.push_back(rand_box(rng));
        BBox expect = union_all(boxes);

        BBox fwd = boxes.front();
        for (const BBox& b : boxes) fwd = bbox_union(fwd, b);
        BBox rev = boxes.back();
        for (auto it = boxes.rbegin(); it != boxes.rend(); ++it) rev = bbox_union(rev, *it);
        CHECK(fwd == expect);
        CHECK(rev == expect);
    }
}

TEST_CASE("bbox_union commutative and associative") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        BBox a = rand_box(rng), b = rand_box(rng), c = rand_box(rng);
        CHECK(bbox_union(a, b) == bbox_union(b, a));
        CHECK(bbox_union(bbox_union(a, b), c) == bbox_union(a, bbox_union(b, c)));
    }
}

TEST_CASE("vertical_overlap_ratio") {
    BBox a{0, 0, 1, 10};
    CHECK(vertical_overlap_ratio(a, a) == doctest::Approx(1.0));
    CHECK(vertical_overlap_ratio(a, BBox{0, 20, 1, 30}) == 0.0);
    // overlap [5,10] = 5, smaller height 10
    CHECK(vertical_overlap_ratio(a, BBox{0, 5, 1, 20}) == doctest::Approx(0.5));
    // zero-height box
    CHECK(vertical_overlap_ratio(a, BBox{0, 5, 1, 5}) == 0.0);
}

TEST_CASE("grid validation rejects overlapping spans") {
    TableGrid g;
    g.n_rows = 2;
    g.n_cols = 2;
    g.cells.push_back(Cell{0, 0, 2, 2, "", {}});
    g.cells.push_back(Cell{1, 1, 1, 1, "", {}});
    CHECK_THROWS_AS(validate_grid(g), std::invalid_argument);

    TableGrid ok;
    ok.n_rows = 2;
    ok.n_cols = 2;
    ok.cells.push_back(Cell{0, 0, 1, 2, "", {}});
    ok.cells.push_back(Cell{1, 0, 1, 1, "", {}});
    ok.cells.push_back(Cell{1, 1, 1, 1, "", {}});
    CHECK_NOTHROW(validate_grid(ok));
}

TEST_CASE("grid validation rejects out-of-range and duplicate anchors") {
    TableGrid g;
    g.n_rows = 1;
    g.n_cols = 1;
    g.cells.push_back(Cell{0, 0, 1, 2, "", {}});
    CHECK_THROWS_AS(validate_grid(g), std::invalid_argument);

    TableGrid d;
    d.n_rows = 2;
    d.n_cols = 1;
    d.cells.push_back(Cell{0, 0, 1, 1, "", {}});
    d.cells.push_back(Cell{0, 0, 1, 1, "", {}});
    CHECK_THROWS_AS(validate_grid(d), std::invalid_argument);
}
