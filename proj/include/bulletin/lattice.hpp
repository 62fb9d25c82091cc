#pragma once

#include "bulletin/geometry.hpp"

#include <optional>
#include <vector>

namespace bulletin {

// Distinct ruling positions of one connected ruled region plus the
// intersections that carry ink.
struct GridSkeleton {
    std::vector<double> xs; // vertical-line positions, strictly increasing
    std::vector<double> ys; // horizontal-line positions, strictly increasing
    std::vector<std::vector<bool>> joint; // |ys| x |xs|
};

// Snaps collinear segments together: same axis, positions within
// snap_tol, gaps <= 3*snap_tol. Output sorted by (axis, position, start).
std::vector<RulingLine> merge_lines(const std::vector<RulingLine>& lines, double snap_tol);

// Reconstructs one TableGrid per connected ruled region. Missing internal
// joints merge neighboring rectangles into spanned cells; cell text is the
// reading-order concatenation of runs whose centers fall inside the cell.
// Regions smaller than 2x2 cells are dropped.
std::vector<TableGrid> detect_lattice(const PageModel& page, double snap_tol = 2.0,
                                      std::optional<BBox> region = std::nullopt);

} // namespace bulletin
