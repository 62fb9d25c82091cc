#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace bulletin {

// Page coordinates are points (1/72 inch), origin top-left, y downward.
// The PDF adapter performs the y flip once at ingestion; everything
// downstream shares this convention.
struct BBox {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double cx() const { return (x0 + x1) / 2; }
    double cy() const { return (y0 + y1) / 2; }
    double area() const { return width() * height(); }

    bool valid() const;
    bool contains(double x, double y) const {
        return x >= x0 && x <= x1 && y >= y0 && y <= y1;
    }
    bool intersects(const BBox& o) const {
        return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1;
    }
    BBox inflated(double d) const { return BBox{x0 - d, y0 - d, x1 + d, y1 + d}; }

    bool operator==(const BBox&) const = default;
};

BBox bbox_union(const BBox& a, const BBox& b);

// Overlap of the two y intervals divided by the smaller height;
// 0 when disjoint or either height is 0.
double vertical_overlap_ratio(const BBox& a, const BBox& b);

double intersection_over_union(const BBox& a, const BBox& b);

// A word-level token. confidence is 1.0 for native PDF text and
// engine-reported for OCR.
struct TextRun {
    BBox bbox;
    std::string text;
    double confidence = 1.0;
};

enum class Axis { horizontal, vertical };

// A drawn line segment. position is the fixed coordinate (y for
// horizontal, x for vertical); start/end run along the other axis.
struct RulingLine {
    Axis axis = Axis::horizontal;
    double position = 0;
    double start = 0;
    double end = 0;
    double thickness = 1.0;

    BBox bbox() const {
        double h = thickness / 2;
        if (axis == Axis::horizontal)
            return BBox{start, position - h, end, position + h};
        return BBox{position - h, start, position + h, end};
    }
};

struct PageModel {
    int page_index = 0;
    double width = 0;
    double height = 0;
    std::vector<TextRun> runs;
    std::vector<RulingLine> lines;

    BBox bounds() const { return BBox{0, 0, width, height}; }
};

enum class DetectMethod { lattice, stream, ocr };

// How the grid's region was obtained by the region resolver.
enum class RegionOrigin { none, external, heuristic };

struct Cell {
    int row = 0;
    int col = 0;
    int row_span = 1;
    int col_span = 1;
    std::string text;
    std::vector<std::size_t> source_runs; // indices into the source PageModel
};

struct TableGrid {
    BBox region;
    int n_rows = 0;
    int n_cols = 0;
    std::vector<Cell> cells;
    DetectMethod method = DetectMethod::stream;
    RegionOrigin region_source = RegionOrigin::none;

    const Cell* cell_at(int row, int col) const;
    // Anchor-cell text in row-major order, spanned positions reported once.
    std::vector<std::string> texts_row_major() const;
};

// Throws std::invalid_argument describing the first violated invariant:
// anchors unique, indices in range, span rectangles pairwise disjoint.
void validate_grid(const TableGrid& grid);

const char* to_string(DetectMethod m);
const char* to_string(RegionOrigin o);

} // namespace bulletin
