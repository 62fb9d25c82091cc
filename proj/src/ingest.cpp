#include "bulletin/ingest.hpp"

#include "bulletin/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace bulletin {

namespace {

std::vector<std::string> split_tsv(const std::string& line) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

std::vector<PageModel> load_pdf(const std::string& path, const PdfReadOptions& opts) {
    return read_pdf(path, opts);
}

PageModel load_ocr_grid(const std::string& path, const OcrPageGeometry& geometry,
                        double min_conf) {
    std::ifstream in(path);
    if (!in) throw IngestError(IngestFault::corrupt, "cannot open grid file: " + path);
    if (geometry.width_px <= 0 || geometry.height_px <= 0 || geometry.width_pt <= 0 ||
        geometry.height_pt <= 0)
        throw IngestError(IngestFault::corrupt, "invalid OCR page geometry");

    double sx = geometry.width_pt / geometry.width_px;
    double sy = geometry.height_pt / geometry.height_px;

    PageModel page;
    page.page_index = geometry.page_index;
    page.width = geometry.width_pt;
    page.height = geometry.height_pt;

    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto cols = split_tsv(line);
        if (!header_seen) {
            header_seen = true;
            if (!cols.empty() && cols[0] == "level") continue; // header row
        }
        if (cols.size() < 12)
            throw IngestError(IngestFault::bad_grid_row,
                              "grid row " + std::to_string(line_no) + ": expected 12 columns, got " +
                                  std::to_string(cols.size()));
        double left, top, w, h, conf;
        try {
            left = std::stod(cols[6]);
            top = std::stod(cols[7]);
            w = std::stod(cols[8]);
            h = std::stod(cols[9]);
            conf = std::stod(cols[10]);
        } catch (const std::exception&) {
            throw IngestError(IngestFault::bad_grid_row,
                              "grid row " + std::to_string(line_no) + ": non-numeric geometry");
        }
        std::string text = trim(cols[11]);
        if (conf < 0) continue; // structural row
        if (conf < min_conf) continue;
        if (text.empty()) continue;
        if (w <= 0 || h <= 0)
            throw IngestError(IngestFault::bad_grid_row,
                              "grid row " + std::to_string(line_no) + ": empty box with text");
        // OCR output may still contain internal spaces; keeps runs word-level.
        std::istringstream words(text);
        std::string word;
        std::vector<std::string> parts;
        while (words >> word) parts.push_back(word);
        double total_chars = 0;
        for (const auto& p : parts) total_chars += static_cast<double>(p.size());
        total_chars += static_cast<double>(parts.size() - 1); // separator spaces
        double x = left;
        for (const auto& p : parts) {
            double frac = total_chars > 0 ? static_cast<double>(p.size()) / total_chars : 1.0;
            double pw = w * frac;
            BBox box{x * sx, top * sy, (x + pw) * sx, (top + h) * sy};
            box.x0 = std::clamp(box.x0, 0.0, page.width);
            box.x1 = std::clamp(box.x1, 0.0, page.width);
            box.y0 = std::clamp(box.y0, 0.0, page.height);
            box.y1 = std::clamp(box.y1, 0.0, page.height);
            if (box.width() > 0 && box.height() > 0)
                page.runs.push_back(TextRun{box, p, conf / 100.0});
            x += pw + (total_chars > 0 ? w / total_chars : 0);
        }
    }
    return page;
}

std::vector<RegionHint> load_region_hints(const std::string& path,
                                          const std::vector<PageModel>& pages) {
    std::ifstream in(path);
    if (!in) throw IngestError(IngestFault::corrupt, "cannot open hint file: " + path);
    std::vector<RegionHint> hints;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw IngestError(IngestFault::bad_hint,
                              "hint line " + std::to_string(line_no) + ": " + e.what());
        }
        RegionHint h;
        try {
            h.page_index = j.at("page_index").get<int>();
            h.region = BBox{j.at("x0").get<double>(), j.at("y0").get<double>(),
                            j.at("x1").get<double>(), j.at("y1").get<double>()};
            h.confidence = j.value("confidence", 1.0);
            std::string origin = j.value("origin", "external");
            h.origin = origin == "heuristic" ? RegionOrigin::heuristic : RegionOrigin::external;
        } catch (const nlohmann::json::exception& e) {
            throw IngestError(IngestFault::bad_hint,
                              "hint line " + std::to_string(line_no) + ": " + e.what());
        }
        if (h.page_index < 0 || h.page_index >= static_cast<int>(pages.size()))
            throw IngestError(IngestFault::bad_hint,
                              "hint line " + std::to_string(line_no) + ": page_index " +
                                  std::to_string(h.page_index) + " out of range");
        if (h.confidence < 0 || h.confidence > 1)
            throw IngestError(IngestFault::bad_hint,
                              "hint line " + std::to_string(line_no) + ": confidence out of [0,1]");
        const PageModel& page = pages[static_cast<size_t>(h.page_index)];
        h.region.x0 = std::clamp(h.region.x0, 0.0, page.width);
        h.region.x1 = std::clamp(h.region.x1, 0.0, page.width);
        h.region.y0 = std::clamp(h.region.y0, 0.0, page.height);
        h.region.y1 = std::clamp(h.region.y1, 0.0, page.height);
        if (!h.region.valid())
            throw IngestError(IngestFault::bad_hint,
                              "hint line " + std::to_string(line_no) + ": degenerate region");
        hints.push_back(h);
    }
    std::stable_sort(hints.begin(), hints.end(), [](const RegionHint& a, const RegionHint& b) {
        return std::pair(a.page_index, a.region.y0) < std::pair(b.page_index, b.region.y0);
    });
    return hints;
}

void save_region_hints(const std::string& path, const std::vector<RegionHint>& hints) {
    std::ofstream out(path);
    for (const RegionHint& h : hints) {
        nlohmann::json j{{"page_index", h.page_index}, {"x0", h.region.x0},
                         {"y0", h.region.y0},          {"x1", h.region.x1},
                         {"y1", h.region.y1},          {"confidence", h.confidence},
                         {"origin", to_string(h.origin)}};
        out << j.dump() << "\n";
    }
}

} // namespace bulletin
