#include "bulletin/font_metrics.hpp"

namespace bulletin {

namespace {

// Helvetica AFM widths for codes 32..126.
const int kHelvetica[95] = {
    278, 278, 355, 556, 556, 889, 667, 191, 333, 333, 389, 584, 278, 333,
    278, 278, 556, 556, 556, 556, 556, 556, 556, 556, 556, 556, 278, 278,
    584, 584, 584, 556, 1015, 667, 667, 722, 722, 667, 611, 778, 722, 278,
    500, 667, 556, 833, 722, 778, 667, 778, 722, 667, 611, 722, 667, 944,
    667, 667, 611, 278, 278, 278, 469, 556, 333, 556, 556, 500, 556, 556,
    278, 556, 556, 222, 222, 500, 222, 833, 556, 556, 556, 556, 333, 500,
    278, 556, 500, 722, 500, 500, 500, 334, 260, 334, 584};

bool contains(const std::string& s, const char* needle) {
    return s.find(needle) != std::string::npos;
}

} // namespace

int FontMetrics::builtin_char_width(const std::string& base_font, unsigned char code) {
    if (contains(base_font, "Courier")) return 600;
    if (contains(base_font, "Helvetica") || contains(base_font, "Arial")) {
        if (code >= 32 && code <= 126) return kHelvetica[code - 32];
        return 556;
    }
    return 0;
}

double FontMetrics::text_width(const std::string& base_font, const std::string& text,
                               double size) {
    double units = 0;
    for (unsigned char c : text) {
        int w = builtin_char_width(base_font, c);
        if (w == 0) w = 500;
        units += w;
    }
    return units * size / 1000.0;
}

} // namespace bulletin
