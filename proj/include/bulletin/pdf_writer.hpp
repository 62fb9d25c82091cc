#pragma once

#include "bulletin/geometry.hpp"

#include <string>
#include <vector>

namespace bulletin {

// Minimal PDF writer: Courier text placement and stroked line segments,
// classic xref, uncompressed streams. Enough to render fixture bulletins
// that round-trip through the ingestion path.
class PdfWriter {
public:
    PdfWriter(double page_width, double page_height)
        : width_(page_width), height_(page_height) {}

    void begin_page();

    // Places one word with its baseline-left corner derived from the
    // top-left-origin bbox position (x, top). Returns the bbox the
    // reader will reconstruct.
    BBox add_word(double x, double top, const std::string& text, double size);

    // Positions in the shared top-left-origin convention.
    void add_line(const RulingLine& line);

    // Serializes all pages; deterministic byte output.
    std::string finish();

    double page_width() const { return width_; }
    double page_height() const { return height_; }

private:
    double width_, height_;
    std::vector<std::string> page_streams_;
};

} // namespace bulletin
