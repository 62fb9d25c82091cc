#include "bulletin/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bulletin {

bool BBox::valid() const {
    return std::isfinite(x0) && std::isfinite(y0) && std::isfinite(x1) &&
           std::isfinite(y1) && x0 <= x1 && y0 <= y1 && x0 >= 0 && y0 >= 0;
}

BBox bbox_union(const BBox& a, const BBox& b) {
    return BBox{std::min(a.x0, b.x0), std::min(a.y0, b.y0),
                std::max(a.x1, b.x1), std::max(a.y1, b.y1)};
}

double vertical_overlap_ratio(const BBox& a, const BBox& b) {
    double overlap = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
    double smaller = std::min(a.height(), b.height());
    if (overlap <= 0 || smaller <= 0) return 0.0;
    return overlap / smaller;
}

double intersection_over_union(const BBox& a, const BBox& b) {
    double ix = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
    double iy = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
    if (ix <= 0 || iy <= 0) return 0.0;
    double inter = ix * iy;
    double uni = a.area() + b.area() - inter;
    return uni > 0 ? inter / uni : 0.0;
}

const Cell* TableGrid::cell_at(int row, int col) const {
    for (const Cell& c : cells)
        if (row >= c.row && row < c.row + c.row_span && col >= c.col &&
            col < c.col + c.col_span)
            return &c;
    return nullptr;
}

std::vector<std::string> TableGrid::texts_row_major() const {
    std::vector<const Cell*> ordered;
    ordered.reserve(cells.size());
    for (const Cell& c : cells) ordered.push_back(&c);
    std::sort(ordered.begin(), ordered.end(), [](const Cell* a, const Cell* b) {
        return std::pair(a->row, a->col) < std::pair(b->row, b->col);
    });
    std::vector<std::string> out;
    out.reserve(ordered.size());
    for (const Cell* c : ordered) out.push_back(c->text);
    return out;
}

void validate_grid(const TableGrid& grid) {
    if (grid.n_rows <= 0 || grid.n_cols <= 0)
        throw std::invalid_argument("grid dimensions must be positive");
    std::vector<char> covered(static_cast<size_t>(grid.n_rows) * grid.n_cols, 0);
    std::vector<char> anchor(covered.size(), 0);
    for (const Cell& c : grid.cells) {
        if (c.row < 0 || c.col < 0 || c.row_span < 1 || c.col_span < 1 ||
            c.row + c.row_span > grid.n_rows || c.col + c.col_span > grid.n_cols)
            throw std::invalid_argument("cell span out of range at (" +
                                        std::to_string(c.row) + "," +
                                        std::to_string(c.col) + ")");
        size_t a = static_cast<size_t>(c.row) * grid.n_cols + c.col;
        if (anchor[a])
            throw std::invalid_argument("duplicate cell anchor at (" +
                                        std::to_string(c.row) + "," +
                                        std::to_string(c.col) + ")");
        anchor[a] = 1;
        for (int r = c.row; r < c.row + c.row_span; ++r)
            for (int k = c.col; k < c.col + c.col_span; ++k) {
                size_t idx = static_cast<size_t>(r) * grid.n_cols + k;
                if (covered[idx])
                    throw std::invalid_argument(
                        "overlapping cell spans at (" + std::to_string(r) + "," +
                        std::to_string(k) + ")");
                covered[idx] = 1;
            }
    }
}

const char* to_string(DetectMethod m) {
    switch (m) {
    case DetectMethod::lattice: return "lattice";
    case DetectMethod::stream: return "stream";
    case DetectMethod::ocr: return "ocr";
    }
    return "?";
}

const char* to_string(RegionOrigin o) {
    switch (o) {
    case RegionOrigin::none: return "none";
    case RegionOrigin::external: return "external";
    case RegionOrigin::heuristic: return "heuristic";
    }
    return "?";
}

} // namespace bulletin
