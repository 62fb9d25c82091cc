#pragma once

#include "bulletin/geometry.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace bulletin {

struct PdfReadOptions {
    // Vector segments at least this long and at most this thick become
    // RulingLines; shorter strokes are decoration.
    double min_rule_len = 8.0;
    double max_rule_thickness = 3.0;
    // Pen jumps beyond this fraction of the font size split words.
    double word_gap_em = 0.25;
};

// Parses a PDF into per-page word runs (confidence 1.0) and ruling lines,
// in top-left-origin point coordinates.
// Throws IngestError(corrupt) on unreadable input, IngestError(encrypted)
// on encrypted documents.
std::vector<PageModel> read_pdf(const std::string& path, const PdfReadOptions& opts = {});
std::vector<PageModel> read_pdf_bytes(std::string_view bytes,
                                      const PdfReadOptions& opts = {});

} // namespace bulletin
