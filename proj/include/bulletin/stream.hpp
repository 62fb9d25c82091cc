#pragma once

#include "bulletin/geometry.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace bulletin {

struct StreamParams {
    double row_overlap_min = 0.5;
    double min_gap = 6.0;       // narrowest whitespace channel that separates columns
    double coverage_min = 0.8;  // fraction of bands a channel must be clear across
    double block_gap = 18.0;    // vertical gap that splits band blocks into tables
    double cross_tol = 1.0;     // how far a run may poke across a cut
};

// One text line: runs sharing transitive vertical overlap, sorted by x0.
struct RowBand {
    double y0 = 0, y1 = 0;
    std::vector<std::size_t> runs; // indices into the source PageModel
};

// Partitions the selected runs into bands by transitive y-overlap >=
// row_overlap_min; bands top-to-bottom, members left-to-right.
std::vector<RowBand> cluster_rows(const PageModel& page,
                                  const std::vector<std::size_t>& run_ids,
                                  double row_overlap_min);

// Vertical whitespace channels of width >= min_gap, run-free across >=
// coverage_min of the bands; one cut at each channel midpoint, sorted by x.
std::vector<double> find_column_cuts(const PageModel& page,
                                     const std::vector<RowBand>& bands,
                                     const StreamParams& params);

// Whitespace-structure table inference. One grid per vertically contiguous
// block of bands; grids smaller than 2x2 are dropped. Unconstrained
// detection deliberately exhibits the classical failure mode: tightly
// packed tables merge into one block.
std::vector<TableGrid> detect_stream(const PageModel& page,
                                     std::optional<BBox> region = std::nullopt,
                                     const StreamParams& params = {});

} // namespace bulletin
