#pragma once

#include "bulletin/geometry.hpp"
#include "bulletin/ingest.hpp"
#include "bulletin/stream.hpp"

#include <vector>

namespace bulletin {

struct ResolvedRegion {
    BBox region;
    RegionOrigin source = RegionOrigin::heuristic;
    int page_index = 0;
};

struct DetectorParams {
    double snap_tol = 2.0;
    StreamParams stream;
    // Regions crossed by at least this many ruling segments go to the
    // lattice detector; 4 segments is the minimum for one ruled cell.
    int lattice_min_segments = 4;
    double heuristic_gap = 10.0;
};

// Connected components of run bboxes under Chebyshev distance <= gap;
// components with fewer than 4 runs are dropped. The fallback when no
// external detector output exists.
std::vector<ResolvedRegion> propose_regions_heuristic(const PageModel& page,
                                                      double gap = 10.0);

// Hints for this page, clamped, with duplicates suppressed: overlap at
// IoU > 0.5 keeps the higher confidence.
std::vector<ResolvedRegion> resolve_hints(const std::vector<RegionHint>& hints,
                                          const PageModel& page);

// Per region: lattice when enough ruling segments intersect it, stream
// otherwise; results concatenated in region order, each grid tagged with
// its region's source.
std::vector<TableGrid> detect_with_regions(const PageModel& page,
                                           const std::vector<ResolvedRegion>& regions,
                                           const DetectorParams& params = {});

// Whole-page detection without hints: lattice grids plus stream grids in
// the unruled remainder.
std::vector<TableGrid> detect_page(const PageModel& page, const DetectorParams& params = {});

} // namespace bulletin
