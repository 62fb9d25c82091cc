#include "bulletin/errors.hpp"
#include "bulletin/forge.hpp"
#include "bulletin/ingest.hpp"
#include "bulletin/pdf_reader.hpp"
#include "bulletin/pdf_writer.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

using namespace bulletin;

namespace {

std::string write_temp(const std::string& bytes, const char* name) {
    std::string path = std::string("/tmp/") + name;
    std::ofstream f(path, std::ios::binary);
    f << bytes;
    return path;
}

} // namespace

TEST_CASE("blank single-page pdf yields empty page model") {
    PdfWriter w(612, 792);
    w.begin_page();
    auto pages = read_pdf_bytes(w.finish());
    REQUIRE(pages.size() == 1);
    CHECK(pages[0].runs.empty());
    CHECK(pages[0].lines.empty());
    CHECK(pages[0].width == doctest::Approx(612));
    CHECK(pages[0].height == doctest::Approx(792));
}

TEST_CASE("fixture words round-trip exactly") {
    PdfWriter w(612, 792);
    w.begin_page();
    const char* words[12] = {"Confirmed", "Cases", "123",   "Recovered", "120", "Deaths",
                             "3",         "Active", "0",    "Tests",     "45",  "RT-PCR"};
    std::vector<BBox> expected;
    double x = 60, y = 80;
    for (int i = 0; i < 12; ++i) {
        expected.push_back(w.add_word(x, y, words[i], 10));
        x += 90;
        if ((i + 1) % 4 == 0) {
            x = 60;
            y += 20;
        }
    }
    auto pages = read_pdf_bytes(w.finish());
    REQUIRE(pages.size() == 1);
    REQUIRE(pages[0].runs.size() == 12);
    for (size_t i = 0; i < 12; ++i) {
        CHECK(pages[0].runs[i].text == words[i]);
        CHECK(pages[0].runs[i].confidence == 1.0);
        CHECK(std::fabs(pages[0].runs[i].bbox.x0 - expected[i].x0) < 0.5);
        CHECK(std::fabs(pages[0].runs[i].bbox.y0 - expected[i].y0) < 0.5);
        CHECK(std::fabs(pages[0].runs[i].bbox.x1 - expected[i].x1) < 0.5);
        CHECK(std::fabs(pages[0].runs[i].bbox.y1 - expected[i].y1) < 0.5);
    }
}

TEST_CASE("three-page fixture indexes pages 0,1,2") {
    PdfWriter w(612, 792);
    for (int p = 0; p < 3; ++p) {
        w.begin_page();
        w.add_word(100, 100, "p" + std::to_string(p), 10);
    }
    auto pages = read_pdf_bytes(w.finish());
    REQUIRE(pages.size() == 3);
    for (int p = 0; p < 3; ++p) {
        CHECK(pages[static_cast<size_t>(p)].page_index == p);
        CHECK(pages[static_cast<size_t>(p)].runs.at(0).text == "p" + std::to_string(p));
    }
}

TEST_CASE("ruling lines survive the round trip; short strokes are dropped") {
    PdfWriter w(612, 792);
    w.begin_page();
    w.add_line(RulingLine{Axis::horizontal, 100, 50, 300, 1});
    w.add_line(RulingLine{Axis::vertical, 50, 100, 200, 1});
    w.add_line(RulingLine{Axis::horizontal, 400, 50, 54, 1}); // 4pt: decoration
    auto pages = read_pdf_bytes(w.finish());
    REQUIRE(pages[0].lines.size() == 2);
    CHECK(pages[0].lines[0].axis == Axis::horizontal);
    CHECK(pages[0].lines[0].position == doctest::Approx(100));
    CHECK(pages[0].lines[1].axis == Axis::vertical);
}

TEST_CASE("unreadable and encrypted inputs raise typed ingest errors") {
    CHECK_THROWS_AS(read_pdf_bytes("not a pdf at all"), IngestError);
    try {
        read_pdf_bytes("not a pdf at all");
    } catch (const IngestError& e) {
        CHECK(e.fault() == IngestFault::corrupt);
    }

    PdfWriter w(612, 792);
    w.begin_page();
    w.add_word(10, 10, "secret", 10);
    std::string bytes = w.finish();
    size_t at = bytes.find("/Root");
    bytes.insert(at, "/Encrypt 9 0 R ");
    try {
        read_pdf_bytes(bytes);
        FAIL("expected IngestError");
    } catch (const IngestError& e) {
        CHECK(e.fault() == IngestFault::encrypted);
    }

    std::string path = write_temp("", "bulletin_missing_dir/nothing.pdf");
    CHECK_THROWS_AS(read_pdf(path), IngestError);
}

TEST_CASE("truncated pdf raises corrupt") {
    PdfWriter w(612, 792);
    w.begin_page();
    w.add_word(10, 10, "text", 10);
    std::string bytes = w.finish();
    CHECK_THROWS_AS(read_pdf_bytes(bytes.substr(0, 40)), IngestError);
}

TEST_CASE("reader splits words on spaces and large TJ jumps") {
    std::string content = "BT /F1 10 Tf 1 0 0 1 72 700 Tm (Two words) Tj ET\n"
                          "BT /F1 10 Tf 1 0 0 1 72 660 Tm [(ker) -30 (ned)] TJ ET\n"
                          "BT /F1 10 Tf 1 0 0 1 72 620 Tm [(far) -2000 (apart)] TJ ET\n";
    std::string pdf = "%PDF-1.4\n"
                      "1 0 obj << /Type /Catalog /Pages 2 0 R >> endobj\n"
                      "2 0 obj << /Type /Pages /Kids [3 0 R] /Count 1 >> endobj\n"
                      "3 0 obj << /Type /Page /Parent 2 0 R /MediaBox [0 0 612 792] "
                      "/Resources << /Font << /F1 4 0 R >> >> /Contents 5 0 R >> endobj\n"
                      "4 0 obj << /Type /Font /Subtype /Type1 /BaseFont /Courier >> endobj\n"
                      "5 0 obj << /Length " + std::to_string(content.size()) + " >>\nstream\n" +
                      content + "endstream endobj\n"
                      "trailer << /Size 6 /Root 1 0 R >>\n";
    auto pages = read_pdf_bytes(pdf);
    REQUIRE(pages.size() == 1);
    REQUIRE(pages[0].runs.size() == 5);
    CHECK(pages[0].runs[0].text == "Two");
    CHECK(pages[0].runs[1].text == "words");
    CHECK(pages[0].runs[2].text == "kerned"); // small TJ kern keeps the word whole
    CHECK(pages[0].runs[3].text == "far");    // 2em TJ jump splits
    CHECK(pages[0].runs[4].text == "apart");
    // TJ gap: -2000/1000 * 10pt = 20pt between "far" end and "apart" start.
    CHECK(pages[0].runs[4].bbox.x0 - pages[0].runs[3].bbox.x1 == doctest::Approx(20).epsilon(0.01));
}

TEST_CASE("forge page renders and reloads with identical structure") {
    forge::TableConstraints c;
    c.n_rows = 4;
    c.n_cols = 3;
    c.ruled = true;
    auto [frag, manifest] = forge::gen_table(42, c);
    PageModel page = forge::fragment_page(frag);
    std::string bytes = forge::render_pdf({page});
    auto pages = read_pdf_bytes(bytes);
    REQUIRE(pages.size() == 1);
    CHECK(pages[0].runs.size() == page.runs.size());
    for (size_t i = 0; i < page.runs.size(); ++i) {
        CHECK(pages[0].runs[i].text == page.runs[i].text);
        CHECK(std::fabs(pages[0].runs[i].bbox.x0 - page.runs[i].bbox.x0) < 0.5);
        CHECK(std::fabs(pages[0].runs[i].bbox.y1 - page.runs[i].bbox.y1) < 0.5);
    }
    CHECK(pages[0].lines.size() == page.lines.size());
}
