#include "bulletin/pdf_writer.hpp"
#include "bulletin/pdf_reader.hpp"
#include <cstdio>
#include <fstream>
int main() {
    using namespace bulletin;
    PdfWriter w(612, 792);
    w.begin_page();
    BBox b1 = w.add_word(100, 50, "Hello", 10);
    BBox b2 = w.add_word(160, 50, "World", 10);
    w.add_line(RulingLine{Axis::horizontal, 80, 90, 300, 1});
    w.add_line(RulingLine{Axis::vertical, 90, 75, 120, 1});
    w.begin_page();
    BBox b3 = w.add_word(40, 700, "Page2", 12);
    std::string bytes = w.finish();
    { std::ofstream f("/tmp/rt.pdf", std::ios::binary); f << bytes; }
    auto pages = read_pdf("/tmp/rt.pdf");
    std::printf("pages=%zu\n", pages.size());
    for (auto& p : pages) {
        std::printf("page %d: %zu runs %zu lines\n", p.page_index, p.runs.size(), p.lines.size());
        for (auto& r : p.runs)
            std::printf("  run '%s' (%.2f,%.2f,%.2f,%.2f) conf=%.1f\n", r.text.c_str(),
                        r.bbox.x0, r.bbox.y0, r.bbox.x1, r.bbox.y1, r.confidence);
        for (auto& l : p.lines)
            std::printf("  line axis=%d pos=%.2f [%.2f,%.2f] t=%.2f\n", (int)l.axis,
                        l.position, l.start, l.end, l.thickness);
    }
    std::printf("expected b1=(%.2f,%.2f,%.2f,%.2f) b2=(%.2f,%.2f,%.2f,%.2f) b3=(%.2f,%.2f,%.2f,%.2f)\n",
                b1.x0,b1.y0,b1.x1,b1.y1, b2.x0,b2.y0,b2.x1,b2.y1, b3.x0,b3.y0,b3.x1,b3.y1);
    return 0;
}
