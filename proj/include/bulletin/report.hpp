#pragma once

#include "bulletin/analytics.hpp"
#include "bulletin/persistence.hpp"

#include <string>
#include <vector>

namespace bulletin {

struct ChartStyle {
    int width = 800;
    int height = 400;
    std::string title;
};

// Deterministic SVG line chart: fixed canvas, one polyline per state,
// null points break the line, isolated points become markers. Identical
// input gives identical bytes. All-null input -> ReportError.
std::string render_chart_svg(const std::vector<SeriesPoint>& series, const ChartStyle& style);

void render_chart(const std::vector<SeriesPoint>& series, const ChartStyle& style,
                  const std::string& out_path);

// Static page set: index.html enumerating every table from the schema
// catalog plus one page per analytics metric embedding its chart.
void render_highlights(const std::string& db_path, const std::string& out_dir);

std::string series_csv(const std::vector<SeriesPoint>& series);

} // namespace bulletin
