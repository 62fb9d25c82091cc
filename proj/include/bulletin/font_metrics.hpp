#pragma once

#include <string>

namespace bulletin {

// Metrics for the standard-14 fonts the pipeline encounters. Widths are
// in 1/1000 em; Courier is fixed-pitch at 600. The ascent/descent split
// (750/250) defines how a baseline placement maps to a run bbox and is
// shared by the fixture writer and the PDF reader so that round trips
// agree exactly.
struct FontMetrics {
    static constexpr double kAscent = 0.75;
    static constexpr double kDescent = 0.25;

    // 0 when the font is unknown and the caller should fall back.
    static int builtin_char_width(const std::string& base_font, unsigned char code);

    static double text_width(const std::string& base_font, const std::string& text,
                             double size);
};

} // namespace bulletin
