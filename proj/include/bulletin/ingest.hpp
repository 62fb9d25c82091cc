#pragma once

#include "bulletin/geometry.hpp"
#include "bulletin/pdf_reader.hpp"

#include <string>
#include <vector>

namespace bulletin {

struct RegionHint {
    int page_index = 0;
    BBox region;
    double confidence = 1.0;
    RegionOrigin origin = RegionOrigin::external;
};

// One row of the OCR engine's tab-separated word grid.
struct OcrWord {
    int page_index = 0;
    double left = 0, top = 0, width = 0, height = 0; // pixels
    double conf = -1;                                // percentage, -1 structural
    std::string text;
};

// Pixel-to-point mapping for one rasterized page. Explicit rather than
// DPI-guessed: OCR rasters vary and a wrong guess silently corrupts
// geometry.
struct OcrPageGeometry {
    double width_px = 0, height_px = 0;
    double width_pt = 0, height_pt = 0;
    int page_index = 0;
};

// One PageModel per page; word-token runs at confidence 1.0; vector line
// segments above the length threshold become RulingLines.
std::vector<PageModel> load_pdf(const std::string& path, const PdfReadOptions& opts = {});

// Parses the 12-column word-grid format. Words with conf >= min_conf
// become TextRuns (pixel boxes scaled to points); conf -1 rows are
// structural and skipped. Malformed row -> IngestError(bad_grid_row).
PageModel load_ocr_grid(const std::string& path, const OcrPageGeometry& geometry,
                        double min_conf = 50.0);

// JSON-lines region hints, clamped to page bounds and sorted by
// (page_index, region.y0). Out-of-range page_index -> IngestError(bad_hint).
std::vector<RegionHint> load_region_hints(const std::string& path,
                                          const std::vector<PageModel>& pages);

void save_region_hints(const std::string& path, const std::vector<RegionHint>& hints);

} // namespace bulletin
