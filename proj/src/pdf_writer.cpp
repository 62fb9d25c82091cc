#include "bulletin/pdf_writer.hpp"

#include "bulletin/font_metrics.hpp"

#include <cstdio>
#include <stdexcept>

namespace bulletin {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape_pdf_string(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '(' || c == ')' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

void PdfWriter::begin_page() { page_streams_.emplace_back(); }

BBox PdfWriter::add_word(double x, double top, const std::string& text, double size) {
    if (page_streams_.empty()) throw std::logic_error("begin_page not called");
    double baseline_model = top + FontMetrics::kAscent * size;
    double baseline_pdf = height_ - baseline_model;
    std::string& st = page_streams_.back();
    st += "BT /F1 " + num(size) + " Tf 1 0 0 1 " + num(x) + " " + num(baseline_pdf) +
          " Tm (" + escape_pdf_string(text) + ") Tj ET\n";
    double w = FontMetrics::text_width("Courier", text, size);
    return BBox{x, top, x + w, top + size};
}

void PdfWriter::add_line(const RulingLine& line) {
    if (page_streams_.empty()) throw std::logic_error("begin_page not called");
    double x1, y1, x2, y2;
    if (line.axis == Axis::horizontal) {
        x1 = line.start;
        x2 = line.end;
        y1 = y2 = height_ - line.position;
    } else {
        x1 = x2 = line.position;
        y1 = height_ - line.start;
        y2 = height_ - line.end;
    }
    std::string& st = page_streams_.back();
    st += "q " + num(line.thickness) + " w " + num(x1) + " " + num(y1) + " m " +
          num(x2) + " " + num(y2) + " l S Q\n";
}

std::string PdfWriter::finish() {
    // Objects: 1 catalog, 2 pages, 3 font, then (page, content) pairs.
    std::vector<std::string> objects;
    size_t n_pages = page_streams_.size();

    std::string kids;
    for (size_t i = 0; i < n_pages; ++i) {
        if (i) kids += " ";
        kids += std::to_string(4 + 2 * i) + " 0 R";
    }
    objects.push_back("<< /Type /Catalog /Pages 2 0 R >>");
    objects.push_back("<< /Type /Pages /Kids [" + kids + "] /Count " +
                      std::to_string(n_pages) + " >>");
    objects.push_back("<< /Type /Font /Subtype /Type1 /BaseFont /Courier >>");
    for (size_t i = 0; i < n_pages; ++i) {
        objects.push_back("<< /Type /Page /Parent 2 0 R /MediaBox [0 0 " + num(width_) +
                          " " + num(height_) +
                          "] /Resources << /Font << /F1 3 0 R >> >> /Contents " +
                          std::to_string(5 + 2 * i) + " 0 R >>");
        const std::string& st = page_streams_[i];
        objects.push_back("<< /Length " + std::to_string(st.size()) + " >>\nstream\n" +
                          st + "endstream");
    }

    std::string out = "%PDF-1.4\n";
    std::vector<size_t> offsets;
    for (size_t i = 0; i < objects.size(); ++i) {
        offsets.push_back(out.size());
        out += std::to_string(i + 1) + " 0 obj\n" + objects[i] + "\nendobj\n";
    }
    size_t xref_pos = out.size();
    out += "xref\n0 " + std::to_string(objects.size() + 1) + "\n";
    out += "0000000000 65535 f \n";
    for (size_t off : offsets) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%010zu 00000 n \n", off);
        out += buf;
    }
    out += "trailer\n<< /Size " + std::to_string(objects.size() + 1) +
           " /Root 1 0 R >>\nstartxref\n" + std::to_string(xref_pos) + "\n%%EOF\n";
    return out;
}

} // namespace bulletin
