#include "bulletin/pdf_reader.hpp"

#include "bulletin/errors.hpp"
#include "bulletin/font_metrics.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <variant>

namespace bulletin {

namespace {

// ---------------------------------------------------------------- objects

struct PdfObj;
using PdfObjPtr = std::shared_ptr<PdfObj>;

struct PdfRef {
    int num = 0;
    int gen = 0;
};

struct PdfStream {
    std::map<std::string, PdfObjPtr> dict;
    std::string raw; // undecoded bytes
};

struct PdfObj {
    std::variant<std::monostate,            // null
                 bool, double, std::string, // string carries literal bytes
                 std::vector<PdfObjPtr>, std::map<std::string, PdfObjPtr>, PdfRef,
                 PdfStream, std::string*>
        v;
    bool is_name = false; // true when the string variant holds a /Name

    bool is_null() const { return std::holds_alternative<std::monostate>(v); }
    bool is_num() const { return std::holds_alternative<double>(v); }
    double num() const { return std::get<double>(v); }
    bool is_dict() const {
        return std::holds_alternative<std::map<std::string, PdfObjPtr>>(v) ||
               std::holds_alternative<PdfStream>(v);
    }
    const std::map<std::string, PdfObjPtr>& dict() const {
        if (auto* s = std::get_if<PdfStream>(&v)) return s->dict;
        return std::get<std::map<std::string, PdfObjPtr>>(v);
    }
};

PdfObjPtr make_obj() { return std::make_shared<PdfObj>(); }

bool is_ws(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\0';
}
bool is_delim(char c) {
    return c == '(' || c == ')' || c == '<' || c == '>' || c == '[' || c == ']' ||
           c == '{' || c == '}' || c == '/' || c == '%';
}

// ---------------------------------------------------------------- lexer

class Lexer {
public:
    Lexer(std::string_view data, size_t pos) : data_(data), pos_(pos) {}

    size_t pos() const { return pos_; }
    void seek(size_t p) { pos_ = p; }
    bool eof() const { return pos_ >= data_.size(); }

    void skip_ws() {
        while (pos_ < data_.size()) {
            char c = data_[pos_];
            if (is_ws(c)) {
                ++pos_;
            } else if (c == '%') {
                while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r')
                    ++pos_;
            } else {
                break;
            }
        }
    }

    // Reads a bare keyword token (obj, endobj, stream, true, R, ...).
    std::string keyword() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < data_.size() && !is_ws(data_[pos_]) && !is_delim(data_[pos_]))
            ++pos_;
        return std::string(data_.substr(start, pos_ - start));
    }

    bool peek_keyword(const std::string& kw) {
        size_t save = pos_;
        std::string k = keyword();
        if (k == kw) return true;
        pos_ = save;
        return false;
    }

    PdfObjPtr parse_object(int depth = 0);

    std::string_view data() const { return data_; }

private:
    PdfObjPtr parse_name();
    PdfObjPtr parse_literal_string();
    PdfObjPtr parse_hex_string();
    PdfObjPtr parse_number_or_ref();

    std::string_view data_;
    size_t pos_;
};

PdfObjPtr Lexer::parse_name() {
    auto obj = make_obj();
    ++pos_; // consumes '/'
    std::string name;
    while (pos_ < data_.size() && !is_ws(data_[pos_]) && !is_delim(data_[pos_])) {
        char c = data_[pos_++];
        if (c == '#' && pos_ + 1 < data_.size()) {
            auto hex = [](char h) -> int {
                if (h >= '0' && h <= '9') return h - '0';
                if (h >= 'a' && h <= 'f') return h - 'a' + 10;
                if (h >= 'A' && h <= 'F') return h - 'A' + 10;
                return -1;
            };
            int hi = hex(data_[pos_]), lo = hex(data_[pos_ + 1]);
            if (hi >= 0 && lo >= 0) {
                c = static_cast<char>(hi * 16 + lo);
                pos_ += 2;
            }
        }
        name.push_back(c);
    }
    obj->v = name;
    obj->is_name = true;
    return obj;
}

PdfObjPtr Lexer::parse_literal_string() {
    auto obj = make_obj();
    ++pos_; // consumes '('
    std::string out;
    int nesting = 1;
    while (pos_ < data_.size()) {
        char c = data_[pos_++];
        if (c == '\\') {
            if (pos_ >= data_.size()) break;
            char e = data_[pos_++];
            switch (e) {
            case 'n': out.push_back('\n'); break;
            case 'r': out.push_back('\r'); break;
            case 't': out.push_back('\t'); break;
            case 'b': out.push_back('\b'); break;
            case 'f': out.push_back('\f'); break;
            case '(': out.push_back('('); break;
            case ')': out.push_back(')'); break;
            case '\\': out.push_back('\\'); break;
            case '\r':
                if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
                break; // line continuation
            case '\n': break;
            default:
                if (e >= '0' && e <= '7') {
                    int val = e - '0';
                    for (int i = 0; i < 2 && pos_ < data_.size() && data_[pos_] >= '0' &&
                                    data_[pos_] <= '7';
                         ++i)
                        val = val * 8 + (data_[pos_++] - '0');
                    out.push_back(static_cast<char>(val & 0xFF));
                } else {
                    out.push_back(e);
                }
            }
        } else if (c == '(') {
            ++nesting;
            out.push_back(c);
        } else if (c == ')') {
            if (--nesting == 0) break;
            out.push_back(c);
        } else {
            out.push_back(c);
        }
    }
    obj->v = out;
    return obj;
}

PdfObjPtr Lexer::parse_hex_string() {
    auto obj = make_obj();
    ++pos_; // consumes '<'
    std::string out;
    int hi = -1;
    while (pos_ < data_.size() && data_[pos_] != '>') {
        char c = data_[pos_++];
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else continue;
        if (hi < 0) {
            hi = d;
        } else {
            out.push_back(static_cast<char>(hi * 16 + d));
            hi = -1;
        }
    }
    if (hi >= 0) out.push_back(static_cast<char>(hi * 16));
    if (pos_ < data_.size()) ++pos_; // consumes '>'
    obj->v = out;
    return obj;
}

PdfObjPtr Lexer::parse_number_or_ref() {
    size_t start = pos_;
    std::string tok = keyword();
    char* endp = nullptr;
    double val = std::strtod(tok.c_str(), &endp);
    auto obj = make_obj();
    if (endp == tok.c_str()) {
        pos_ = start + 1; // makes progress on garbage
        return obj;
    }
    // A non-negative integer may start an indirect reference "N G R".
    if (val >= 0 && val == std::floor(val) && tok.find('.') == std::string::npos) {
        size_t save = pos_;
        skip_ws();
        size_t gen_start = pos_;
        std::string gen_tok = keyword();
        bool gen_ok = !gen_tok.empty() &&
                      std::all_of(gen_tok.begin(), gen_tok.end(),
                                  [](char c) { return std::isdigit((unsigned char)c); });
        if (gen_ok) {
            skip_ws();
            if (pos_ < data_.size() && data_[pos_] == 'R' &&
                (pos_ + 1 >= data_.size() || is_ws(data_[pos_ + 1]) ||
                 is_delim(data_[pos_ + 1]))) {
                ++pos_;
                obj->v = PdfRef{static_cast<int>(val), std::atoi(gen_tok.c_str())};
                return obj;
            }
        }
        pos_ = save;
        (void)gen_start;
    }
    obj->v = val;
    return obj;
}

PdfObjPtr Lexer::parse_object(int depth) {
    if (depth > 64) throw IngestError(IngestFault::corrupt, "object nesting too deep");
    skip_ws();
    if (eof()) return make_obj();
    char c = data_[pos_];
    if (c == '/') return parse_name();
    if (c == '(') return parse_literal_string();
    if (c == '[') {
        ++pos_;
        auto obj = make_obj();
        std::vector<PdfObjPtr> arr;
        while (true) {
            skip_ws();
            if (eof()) break;
            if (data_[pos_] == ']') {
                ++pos_;
                break;
            }
            arr.push_back(parse_object(depth + 1));
        }
        obj->v = std::move(arr);
        return obj;
    }
    if (c == '<') {
        if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '<') {
            pos_ += 2;
            std::map<std::string, PdfObjPtr> dict;
            while (true) {
                skip_ws();
                if (eof()) break;
                if (data_[pos_] == '>' && pos_ + 1 < data_.size() &&
                    data_[pos_ + 1] == '>') {
                    pos_ += 2;
                    break;
                }
                if (data_[pos_] != '/') { // recovers from malformed keys
                    parse_object(depth + 1);
                    continue;
                }
                auto key = parse_name();
                auto val = parse_object(depth + 1);
                dict[std::get<std::string>(key->v)] = val;
            }
            auto obj = make_obj();
            obj->v = std::move(dict);
            return obj;
        }
        return parse_hex_string();
    }
    if (c == '-' || c == '+' || c == '.' || std::isdigit(static_cast<unsigned char>(c)))
        return parse_number_or_ref();

    std::string kw = keyword();
    auto obj = make_obj();
    if (kw == "true") obj->v = true;
    else if (kw == "false") obj->v = false;
    else if (kw == "null" || kw.empty()) obj->v = std::monostate{};
    else obj->v = std::monostate{}; // unknown keyword treated as null
    return obj;
}

// ---------------------------------------------------------------- document

std::string zlib_inflate(const std::string& in) {
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK)
        throw IngestError(IngestFault::corrupt, "zlib init failed");
    std::string out;
    out.reserve(in.size() * 4);
    char buf[16384];
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
    zs.avail_in = static_cast<uInt>(in.size());
    int ret = Z_OK;
    do {
        zs.next_out = reinterpret_cast<Bytef*>(buf);
        zs.avail_out = sizeof buf;
        ret = inflate(&zs, Z_NO_FLUSH);
        if (ret != Z_OK && ret != Z_STREAM_END) {
            inflateEnd(&zs);
            // Tolerates truncated tails; real-world streams are often sloppy.
            if (!out.empty() || ret == Z_BUF_ERROR) return out;
            throw IngestError(IngestFault::corrupt, "flate stream damaged");
        }
        out.append(buf, sizeof buf - zs.avail_out);
    } while (ret != Z_STREAM_END && zs.avail_in > 0);
    inflateEnd(&zs);
    return out;
}

class Document {
public:
    explicit Document(std::string_view data) : data_(data) { index_objects(); }

    PdfObjPtr resolve(const PdfObjPtr& obj) {
        PdfObjPtr cur = obj;
        for (int hops = 0; hops < 32 && cur; ++hops) {
            auto* ref = std::get_if<PdfRef>(&cur->v);
            if (!ref) return cur;
            cur = object(ref->num);
        }
        return cur ? cur : make_obj();
    }

    PdfObjPtr object(int num) {
        auto it = cache_.find(num);
        if (it != cache_.end()) return it->second;
        auto off_it = offsets_.find(num);
        if (off_it == offsets_.end()) return make_obj();
        PdfObjPtr obj = parse_indirect(off_it->second);
        cache_[num] = obj;
        return obj;
    }

    PdfObjPtr dict_get(const PdfObj& dict, const std::string& key) {
        if (!dict.is_dict()) return make_obj();
        auto it = dict.dict().find(key);
        if (it == dict.dict().end()) return make_obj();
        return resolve(it->second);
    }

    PdfObjPtr catalog();
    std::string decoded_stream(const PdfObj& obj);
    void check_encryption();

    std::string_view data() const { return data_; }

private:
    void index_objects();
    PdfObjPtr parse_indirect(size_t offset);

    std::string_view data_;
    std::map<int, size_t> offsets_;
    std::map<int, PdfObjPtr> cache_;
};

// Brute-scans "N G obj" definitions. Later definitions win, matching
// incremental-update semantics well enough for both classic and
// xref-stream files whose objects are stored uncompressed.
void Document::index_objects() {
    const std::string_view needle = " obj";
    size_t pos = 0;
    while (true) {
        size_t hit = data_.find("obj", pos);
        if (hit == std::string_view::npos) break;
        pos = hit + 3;
        // Walks back over "N G " directly before "obj".
        size_t p = hit;
        while (p > 0 && is_ws(data_[p - 1])) --p;
        size_t gen_end = p;
        while (p > 0 && std::isdigit(static_cast<unsigned char>(data_[p - 1]))) --p;
        size_t gen_start = p;
        if (gen_start == gen_end) continue;
        while (p > 0 && is_ws(data_[p - 1])) --p;
        size_t num_end = p;
        while (p > 0 && std::isdigit(static_cast<unsigned char>(data_[p - 1]))) --p;
        size_t num_start = p;
        if (num_start == num_end) continue;
        if (p > 0 && !is_ws(data_[p - 1]) && !is_delim(data_[p - 1])) continue;
        int num = std::atoi(std::string(data_.substr(num_start, num_end - num_start)).c_str());
        offsets_[num] = num_start;
    }
    (void)needle;
    if (offsets_.empty())
        throw IngestError(IngestFault::corrupt, "no PDF objects found");
}

PdfObjPtr Document::parse_indirect(size_t offset) {
    Lexer lex(data_, offset);
    lex.keyword(); // object number
    lex.keyword(); // generation
    if (!lex.peek_keyword("obj")) return make_obj();
    PdfObjPtr obj = lex.parse_object();
    lex.skip_ws();
    if (lex.peek_keyword("stream")) {
        size_t p = lex.pos();
        if (p < data_.size() && data_[p] == '\r') ++p;
        if (p < data_.size() && data_[p] == '\n') ++p;
        size_t length = 0;
        bool have_len = false;
        if (obj->is_dict()) {
            auto it = obj->dict().find("Length");
            if (it != obj->dict().end()) {
                PdfObjPtr len = resolve(it->second);
                if (len->is_num() && len->num() >= 0) {
                    length = static_cast<size_t>(len->num());
                    have_len = true;
                }
            }
        }
        size_t end;
        if (have_len && p + length <= data_.size()) {
            end = p + length;
            // Distrusts /Length when no endstream follows.
            size_t check = data_.find("endstream", end);
            if (check == std::string_view::npos || check > end + 4) {
                size_t scan = data_.find("endstream", p);
                if (scan != std::string_view::npos) end = scan;
            }
        } else {
            size_t scan = data_.find("endstream", p);
            end = scan == std::string_view::npos ? data_.size() : scan;
        }
        while (end > p && (data_[end - 1] == '\n' || data_[end - 1] == '\r')) --end;
        PdfStream st;
        st.dict = obj->dict();
        st.raw = std::string(data_.substr(p, end - p));
        auto sobj = make_obj();
        sobj->v = std::move(st);
        return sobj;
    }
    return obj;
}

std::string Document::decoded_stream(const PdfObj& obj) {
    auto* st = std::get_if<PdfStream>(&obj.v);
    if (!st) return {};
    std::vector<std::string> filters;
    auto it = st->dict.find("Filter");
    if (it != st->dict.end()) {
        PdfObjPtr f = resolve(it->second);
        if (f->is_name) filters.push_back(std::get<std::string>(f->v));
        else if (auto* arr = std::get_if<std::vector<PdfObjPtr>>(&f->v))
            for (const auto& e : *arr) {
                PdfObjPtr r = resolve(e);
                if (r->is_name) filters.push_back(std::get<std::string>(r->v));
            }
    }
    std::string out = st->raw;
    for (const std::string& f : filters) {
        if (f == "FlateDecode" || f == "Fl") {
            out = zlib_inflate(out);
        } else {
            // Unsupported filter (DCT, LZW, ...): yields nothing rather
            // than garbage operators.
            return {};
        }
    }
    return out;
}

void Document::check_encryption() {
    // Either a classic trailer or an xref-stream dict may carry /Encrypt.
    size_t pos = 0;
    while (true) {
        size_t hit = data_.find("trailer", pos);
        if (hit == std::string_view::npos) break;
        Lexer lex(data_, hit + 7);
        try {
            PdfObjPtr t = lex.parse_object();
            if (t->is_dict() && t->dict().count("Encrypt"))
                throw IngestError(IngestFault::encrypted, "document is encrypted");
        } catch (const IngestError&) {
            throw;
        } catch (...) {
        }
        pos = hit + 7;
    }
    for (const auto& [num, off] : offsets_) {
        (void)off;
        PdfObjPtr obj = object(num);
        if (obj->is_dict()) {
            auto ty = obj->dict().find("Type");
            if (ty != obj->dict().end() && ty->second->is_name &&
                std::get<std::string>(ty->second->v) == "XRef" &&
                obj->dict().count("Encrypt"))
                throw IngestError(IngestFault::encrypted, "document is encrypted");
        }
    }
}

PdfObjPtr Document::catalog() {
    // Prefers the trailer's /Root.
    size_t pos = data_.rfind("trailer");
    while (pos != std::string_view::npos) {
        Lexer lex(data_, pos + 7);
        try {
            PdfObjPtr t = lex.parse_object();
            if (t->is_dict()) {
                auto it = t->dict().find("Root");
                if (it != t->dict().end()) {
                    PdfObjPtr root = resolve(it->second);
                    if (root->is_dict()) return root;
                }
            }
        } catch (...) {
        }
        pos = pos == 0 ? std::string_view::npos : data_.rfind("trailer", pos - 1);
    }
    // Falls back to scanning for a /Type /Catalog object.
    for (const auto& [num, off] : offsets_) {
        (void)off;
        PdfObjPtr obj = object(num);
        if (!obj->is_dict()) continue;
        auto it = obj->dict().find("Type");
        if (it != obj->dict().end() && it->second->is_name &&
            std::get<std::string>(it->second->v) == "Catalog")
            return obj;
    }
    throw IngestError(IngestFault::corrupt, "no document catalog");
}

// ---------------------------------------------------------------- content

struct Mat {
    double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;

    static Mat translate(double tx, double ty) { return Mat{1, 0, 0, 1, tx, ty}; }

    // Row-vector convention: apply(p, mul(A, B)) == apply(apply(p, A), B).
    static Mat mul(const Mat& m, const Mat& n) {
        return Mat{m.a * n.a + m.b * n.c,        m.a * n.b + m.b * n.d,
                   m.c * n.a + m.d * n.c,        m.c * n.b + m.d * n.d,
                   m.e * n.a + m.f * n.c + n.e,  m.e * n.b + m.f * n.d + n.f};
    }

    void apply(double x, double y, double& ox, double& oy) const {
        ox = a * x + c * y + e;
        oy = b * x + d * y + f;
    }

    double x_scale() const { return std::hypot(a, b); }
    double y_scale() const { return std::hypot(c, d); }
};

struct FontInfo {
    std::string base_font = "Helvetica";
    std::vector<int> widths; // indexed from first_char, 1/1000 em
    int first_char = 0;
};

struct GState {
    Mat ctm;
    double line_width = 1.0;
};

class ContentInterpreter {
public:
    ContentInterpreter(Document& doc, const PdfObj& resources, double page_height,
                       const PdfReadOptions& opts, PageModel& out)
        : doc_(doc), page_height_(page_height), opts_(opts), out_(out) {
        load_fonts(resources);
    }

    void run(const std::string& content);

private:
    void op_show_string(const std::string& s);
    void op_TJ(const std::vector<PdfObjPtr>& arr);
    void flush_word();
    void emit_segment(double x1, double y1, double x2, double y2, double width);
    void stroke_path();
    void fill_path();
    double glyph_width_em(unsigned char code) const;
    void load_fonts(const PdfObj& resources);

    Document& doc_;
    double page_height_;
    PdfReadOptions opts_;
    PageModel& out_;

    std::map<std::string, FontInfo> fonts_;
    GState gs_;
    std::vector<GState> gs_stack_;

    // Text state.
    Mat tm_, tlm_;
    FontInfo cur_font_;
    double font_size_ = 0;
    double char_spacing_ = 0;
    double word_spacing_ = 0;
    double leading_ = 0;
    double h_scale_ = 1.0;
    bool in_text_ = false;

    // Current word accumulation, in text-space x along the baseline.
    std::string word_;
    double word_start_x_ = 0;
    double pen_x_ = 0;

    // Path construction, device coordinates.
    struct SubPath {
        std::vector<std::pair<double, double>> pts;
    };
    std::vector<SubPath> path_;
    bool path_is_rect_ = false;
    double rect_[4] = {0, 0, 0, 0}; // x, y, w, h in user space at `re` time
    Mat rect_ctm_;
};

void ContentInterpreter::load_fonts(const PdfObj& resources) {
    if (!resources.is_dict()) return;
    PdfObjPtr font_dict = doc_.dict_get(resources, "Font");
    if (!font_dict->is_dict()) return;
    for (const auto& [name, ref] : font_dict->dict()) {
        PdfObjPtr f = doc_.resolve(ref);
        if (!f->is_dict()) continue;
        FontInfo info;
        PdfObjPtr base = doc_.dict_get(*f, "BaseFont");
        if (base->is_name) info.base_font = std::get<std::string>(base->v);
        PdfObjPtr fc = doc_.dict_get(*f, "FirstChar");
        if (fc->is_num()) info.first_char = static_cast<int>(fc->num());
        PdfObjPtr widths = doc_.dict_get(*f, "Widths");
        if (auto* arr = std::get_if<std::vector<PdfObjPtr>>(&widths->v))
            for (const auto& w : *arr) {
                PdfObjPtr r = doc_.resolve(w);
                info.widths.push_back(r->is_num() ? static_cast<int>(r->num()) : 500);
            }
        fonts_[name] = info;
    }
}

double ContentInterpreter::glyph_width_em(unsigned char code) const {
    int idx = static_cast<int>(code) - cur_font_.first_char;
    if (idx >= 0 && idx < static_cast<int>(cur_font_.widths.size()) &&
        cur_font_.widths[static_cast<size_t>(idx)] > 0)
        return cur_font_.widths[static_cast<size_t>(idx)] / 1000.0;
    int w = FontMetrics::builtin_char_width(cur_font_.base_font, code);
    return (w > 0 ? w : 500) / 1000.0;
}

void ContentInterpreter::flush_word() {
    if (word_.empty()) return;
    Mat trm = Mat::mul(tm_, gs_.ctm);
    double size_dev = font_size_ * trm.y_scale();
    double x0, y0, x1, y1;
    trm.apply(word_start_x_, 0, x0, y0);
    trm.apply(pen_x_, 0, x1, y1);
    if (x1 < x0) std::swap(x0, x1);
    double baseline_model = page_height_ - y0;
    BBox box{x0, baseline_model - FontMetrics::kAscent * size_dev, x1,
             baseline_model + FontMetrics::kDescent * size_dev};
    TextRun run{box, word_, 1.0};
    word_.clear();
    if (box.x1 <= box.x0 || box.y1 <= box.y0) return;
    out_.runs.push_back(std::move(run));
}

void ContentInterpreter::op_show_string(const std::string& s) {
    for (unsigned char c : s) {
        double adv = glyph_width_em(c) * font_size_ + char_spacing_;
        if (c == ' ') adv += word_spacing_;
        if (std::isspace(c)) {
            flush_word();
            pen_x_ += adv * h_scale_;
            word_start_x_ = pen_x_;
            continue;
        }
        if (word_.empty()) word_start_x_ = pen_x_;
        word_.push_back(static_cast<char>(c));
        pen_x_ += adv * h_scale_;
    }
}

void ContentInterpreter::op_TJ(const std::vector<PdfObjPtr>& arr) {
    for (const auto& el : arr) {
        if (el->is_num()) {
            double shift = -el->num() / 1000.0 * font_size_ * h_scale_;
            if (std::fabs(shift) > opts_.word_gap_em * font_size_) {
                flush_word();
                pen_x_ += shift;
                word_start_x_ = pen_x_;
            } else {
                pen_x_ += shift;
            }
        } else if (std::holds_alternative<std::string>(el->v) && !el->is_name) {
            op_show_string(std::get<std::string>(el->v));
        }
    }
}

void ContentInterpreter::emit_segment(double x1, double y1, double x2, double y2,
                                      double width) {
    const double axis_tol = 0.5;
    double my1 = page_height_ - y1, my2 = page_height_ - y2;
    if (width <= 0) width = 0.5;
    if (width > opts_.max_rule_thickness) return;
    if (std::fabs(my1 - my2) <= axis_tol) { // horizontal
        double a = std::min(x1, x2), b = std::max(x1, x2);
        if (b - a < opts_.min_rule_len) return;
        out_.lines.push_back(RulingLine{Axis::horizontal, (my1 + my2) / 2, a, b, width});
    } else if (std::fabs(x1 - x2) <= axis_tol) { // vertical
        double a = std::min(my1, my2), b = std::max(my1, my2);
        if (b - a < opts_.min_rule_len) return;
        out_.lines.push_back(RulingLine{Axis::vertical, (x1 + x2) / 2, a, b, width});
    }
}

void ContentInterpreter::stroke_path() {
    double w = gs_.line_width * (gs_.ctm.x_scale() + gs_.ctm.y_scale()) / 2;
    for (const SubPath& sp : path_)
        for (size_t i = 1; i < sp.pts.size(); ++i)
            emit_segment(sp.pts[i - 1].first, sp.pts[i - 1].second, sp.pts[i].first,
                         sp.pts[i].second, w);
    path_.clear();
    path_is_rect_ = false;
}

void ContentInterpreter::fill_path() {
    // Thin filled rectangles are rules drawn without stroking.
    if (path_is_rect_) {
        double x0, y0, x1, y1;
        rect_ctm_.apply(rect_[0], rect_[1], x0, y0);
        rect_ctm_.apply(rect_[0] + rect_[2], rect_[1] + rect_[3], x1, y1);
        double wdev = std::fabs(x1 - x0), hdev = std::fabs(y1 - y0);
        if (hdev <= opts_.max_rule_thickness && wdev >= opts_.min_rule_len) {
            emit_segment(x0, (y0 + y1) / 2, x1, (y0 + y1) / 2, std::max(hdev, 0.5));
        } else if (wdev <= opts_.max_rule_thickness && hdev >= opts_.min_rule_len) {
            emit_segment((x0 + x1) / 2, y0, (x0 + x1) / 2, y1, std::max(wdev, 0.5));
        }
    }
    path_.clear();
    path_is_rect_ = false;
}

void ContentInterpreter::run(const std::string& content) {
    Lexer lex(content, 0);
    std::vector<PdfObjPtr> stack;
    auto popn = [&](size_t n) -> std::vector<PdfObjPtr> {
        std::vector<PdfObjPtr> args;
        if (stack.size() < n) n = stack.size();
        args.assign(stack.end() - static_cast<long>(n), stack.end());
        stack.resize(stack.size() - n);
        return args;
    };
    auto fnum = [](const std::vector<PdfObjPtr>& a, size_t i) -> double {
        return i < a.size() && a[i]->is_num() ? a[i]->num() : 0.0;
    };

    while (true) {
        lex.skip_ws();
        if (lex.eof()) break;
        char c = lex.data()[lex.pos()];
        if (c == '/' || c == '(' || c == '<' || c == '[' || c == '-' || c == '+' ||
            c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
            stack.push_back(lex.parse_object());
            continue;
        }
        std::string op = lex.keyword();
        if (op.empty()) break;

        if (op == "q") {
            gs_stack_.push_back(gs_);
        } else if (op == "Q") {
            if (!gs_stack_.empty()) {
                gs_ = gs_stack_.back();
                gs_stack_.pop_back();
            }
        } else if (op == "cm") {
            auto a = popn(6);
            Mat m{fnum(a, 0), fnum(a, 1), fnum(a, 2), fnum(a, 3), fnum(a, 4), fnum(a, 5)};
            gs_.ctm = Mat::mul(m, gs_.ctm);
        } else if (op == "w") {
            auto a = popn(1);
            gs_.line_width = fnum(a, 0);
        } else if (op == "BT") {
            tm_ = Mat{};
            tlm_ = Mat{};
            in_text_ = true;
            pen_x_ = word_start_x_ = 0;
        } else if (op == "ET") {
            flush_word();
            in_text_ = false;
        } else if (op == "Tf") {
            auto a = popn(2);
            font_size_ = fnum(a, 1);
            if (!a.empty() && a[0]->is_name) {
                auto it = fonts_.find(std::get<std::string>(a[0]->v));
                cur_font_ = it != fonts_.end() ? it->second : FontInfo{};
            }
        } else if (op == "Td" || op == "TD") {
            auto a = popn(2);
            flush_word();
            if (op == "TD") leading_ = -fnum(a, 1);
            tlm_ = Mat::mul(Mat::translate(fnum(a, 0), fnum(a, 1)), tlm_);
            tm_ = tlm_;
            pen_x_ = word_start_x_ = 0;
        } else if (op == "Tm") {
            auto a = popn(6);
            flush_word();
            tlm_ = Mat{fnum(a, 0), fnum(a, 1), fnum(a, 2),
                       fnum(a, 3), fnum(a, 4), fnum(a, 5)};
            tm_ = tlm_;
            pen_x_ = word_start_x_ = 0;
        } else if (op == "T*") {
            flush_word();
            tlm_ = Mat::mul(Mat::translate(0, -leading_), tlm_);
            tm_ = tlm_;
            pen_x_ = word_start_x_ = 0;
        } else if (op == "TL") {
            leading_ = fnum(popn(1), 0);
        } else if (op == "Tc") {
            char_spacing_ = fnum(popn(1), 0);
        } else if (op == "Tw") {
            word_spacing_ = fnum(popn(1), 0);
        } else if (op == "Tz") {
            h_scale_ = fnum(popn(1), 0) / 100.0;
        } else if (op == "Tj") {
            auto a = popn(1);
            if (!a.empty() && std::holds_alternative<std::string>(a[0]->v))
                op_show_string(std::get<std::string>(a[0]->v));
        } else if (op == "'") {
            auto a = popn(1);
            flush_word();
            tlm_ = Mat::mul(Mat::translate(0, -leading_), tlm_);
            tm_ = tlm_;
            pen_x_ = word_start_x_ = 0;
            if (!a.empty() && std::holds_alternative<std::string>(a[0]->v))
                op_show_string(std::get<std::string>(a[0]->v));
        } else if (op == "\"") {
            auto a = popn(3);
            word_spacing_ = fnum(a, 0);
            char_spacing_ = fnum(a, 1);
            flush_word();
            tlm_ = Mat::mul(Mat::translate(0, -leading_), tlm_);
            tm_ = tlm_;
            pen_x_ = word_start_x_ = 0;
            if (a.size() == 3 && std::holds_alternative<std::string>(a[2]->v))
                op_show_string(std::get<std::string>(a[2]->v));
        } else if (op == "TJ") {
            auto a = popn(1);
            if (!a.empty())
                if (auto* arr = std::get_if<std::vector<PdfObjPtr>>(&a[0]->v))
                    op_TJ(*arr);
        } else if (op == "m") {
            auto a = popn(2);
            double x, y;
            gs_.ctm.apply(fnum(a, 0), fnum(a, 1), x, y);
            path_.push_back(SubPath{{{x, y}}});
            path_is_rect_ = false;
        } else if (op == "l") {
            auto a = popn(2);
            double x, y;
            gs_.ctm.apply(fnum(a, 0), fnum(a, 1), x, y);
            if (path_.empty()) path_.push_back(SubPath{});
            path_.back().pts.emplace_back(x, y);
        } else if (op == "re") {
            auto a = popn(4);
            double x = fnum(a, 0), y = fnum(a, 1), w = fnum(a, 2), h = fnum(a, 3);
            SubPath sp;
            double px, py;
            gs_.ctm.apply(x, y, px, py);
            sp.pts.emplace_back(px, py);
            gs_.ctm.apply(x + w, y, px, py);
            sp.pts.emplace_back(px, py);
            gs_.ctm.apply(x + w, y + h, px, py);
            sp.pts.emplace_back(px, py);
            gs_.ctm.apply(x, y + h, px, py);
            sp.pts.emplace_back(px, py);
            sp.pts.push_back(sp.pts.front());
            path_.push_back(std::move(sp));
            path_is_rect_ = path_.size() == 1;
            rect_[0] = x;
            rect_[1] = y;
            rect_[2] = w;
            rect_[3] = h;
            rect_ctm_ = gs_.ctm;
        } else if (op == "h") {
            if (!path_.empty() && path_.back().pts.size() > 1)
                path_.back().pts.push_back(path_.back().pts.front());
        } else if (op == "S") {
            stroke_path();
        } else if (op == "s") {
            if (!path_.empty() && path_.back().pts.size() > 1)
                path_.back().pts.push_back(path_.back().pts.front());
            stroke_path();
        } else if (op == "f" || op == "F" || op == "f*") {
            fill_path();
        } else if (op == "B" || op == "B*" || op == "b" || op == "b*") {
            stroke_path();
        } else if (op == "n") {
            path_.clear();
            path_is_rect_ = false;
        } else if (op == "BI") {
            // Inline image: skips to EI.
            size_t ei = lex.data().find("EI", lex.pos());
            lex.seek(ei == std::string_view::npos ? lex.data().size() : ei + 2);
        } else {
            stack.clear();
        }
    }
    flush_word();
}

// ---------------------------------------------------------------- pages

struct RawPage {
    PdfObjPtr page;
    PdfObjPtr resources;
    double width = 612, height = 792;
};

void collect_pages(Document& doc, const PdfObjPtr& node, PdfObjPtr inherited_resources,
                   std::optional<BBox> inherited_media, std::vector<RawPage>& out,
                   std::set<const PdfObj*>& seen, int depth) {
    if (!node || !node->is_dict() || depth > 64) return;
    if (!seen.insert(node.get()).second) return;

    PdfObjPtr res = doc.dict_get(*node, "Resources");
    if (!res->is_dict()) res = inherited_resources;
    PdfObjPtr mb = doc.dict_get(*node, "MediaBox");
    std::optional<BBox> media = inherited_media;
    if (auto* arr = std::get_if<std::vector<PdfObjPtr>>(&mb->v); arr && arr->size() == 4) {
        auto n = [&](size_t i) {
            PdfObjPtr r = doc.resolve((*arr)[i]);
            return r->is_num() ? r->num() : 0.0;
        };
        media = BBox{std::min(n(0), n(2)), std::min(n(1), n(3)), std::max(n(0), n(2)),
                     std::max(n(1), n(3))};
    }

    PdfObjPtr type = doc.dict_get(*node, "Type");
    bool is_page = type->is_name && std::get<std::string>(type->v) == "Page";
    PdfObjPtr kids = doc.dict_get(*node, "Kids");
    if (!is_page) {
        if (auto* arr = std::get_if<std::vector<PdfObjPtr>>(&kids->v)) {
            for (const auto& kid : *arr)
                collect_pages(doc, doc.resolve(kid), res, media, out, seen, depth + 1);
            return;
        }
        if (!node->dict().count("Contents")) return; // not a page at all
    }
    RawPage rp;
    rp.page = node;
    rp.resources = res;
    if (media) {
        rp.width = media->width();
        rp.height = media->height();
    }
    out.push_back(rp);
}

PageModel build_page(Document& doc, const RawPage& rp, int index,
                     const PdfReadOptions& opts) {
    PageModel page;
    page.page_index = index;
    page.width = rp.width;
    page.height = rp.height;

    std::string content;
    PdfObjPtr contents = doc.dict_get(*rp.page, "Contents");
    if (auto* arr = std::get_if<std::vector<PdfObjPtr>>(&contents->v)) {
        for (const auto& part : *arr) {
            PdfObjPtr r = doc.resolve(part);
            content += doc.decoded_stream(*r);
            content += "\n";
        }
    } else {
        content = doc.decoded_stream(*contents);
    }

    PdfObjPtr res = rp.resources ? rp.resources : make_obj();
    ContentInterpreter interp(doc, *res, page.height, opts, page);
    interp.run(content);

    // Clamps to page bounds; fully outside content is dropped.
    BBox bounds = page.bounds();
    std::vector<TextRun> kept_runs;
    for (TextRun& r : page.runs) {
        if (!r.bbox.intersects(bounds)) continue;
        r.bbox.x0 = std::max(r.bbox.x0, 0.0);
        r.bbox.y0 = std::max(r.bbox.y0, 0.0);
        r.bbox.x1 = std::min(r.bbox.x1, page.width);
        r.bbox.y1 = std::min(r.bbox.y1, page.height);
        if (r.bbox.width() > 0 && r.bbox.height() > 0) kept_runs.push_back(std::move(r));
    }
    page.runs = std::move(kept_runs);
    std::vector<RulingLine> kept_lines;
    for (RulingLine& l : page.lines) {
        double limit = l.axis == Axis::horizontal ? page.width : page.height;
        double pos_limit = l.axis == Axis::horizontal ? page.height : page.width;
        if (l.position < 0 || l.position > pos_limit) continue;
        l.start = std::max(l.start, 0.0);
        l.end = std::min(l.end, limit);
        if (l.end - l.start >= opts.min_rule_len) kept_lines.push_back(l);
    }
    page.lines = std::move(kept_lines);
    return page;
}

} // namespace

std::vector<PageModel> read_pdf_bytes(std::string_view bytes, const PdfReadOptions& opts) {
    if (bytes.size() < 8 || bytes.substr(0, 5) != "%PDF-")
        throw IngestError(IngestFault::corrupt, "missing %PDF header");
    Document doc(bytes);
    doc.check_encryption();
    PdfObjPtr catalog = doc.catalog();
    PdfObjPtr pages_root = doc.dict_get(*catalog, "Pages");
    std::vector<RawPage> raw;
    std::set<const PdfObj*> seen;
    collect_pages(doc, pages_root, make_obj(), std::nullopt, raw, seen, 0);
    if (raw.empty())
        throw IngestError(IngestFault::corrupt, "document has no pages");
    std::vector<PageModel> out;
    out.reserve(raw.size());
    for (size_t i = 0; i < raw.size(); ++i)
        out.push_back(build_page(doc, raw[i], static_cast<int>(i), opts));
    return out;
}

std::vector<PageModel> read_pdf(const std::string& path, const PdfReadOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError(IngestFault::corrupt, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string bytes = ss.str();
    return read_pdf_bytes(bytes, opts);
}

} // namespace bulletin
