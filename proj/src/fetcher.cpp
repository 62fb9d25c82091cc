#include "bulletin/fetcher.hpp"

#include "bulletin/errors.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

namespace bulletin {

namespace {

namespace fs = std::filesystem;

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string strip_tags(const std::string& html) {
    std::string out;
    bool in_tag = false;
    for (char c : html) {
        if (c == '<') in_tag = true;
        else if (c == '>') in_tag = false;
        else if (!in_tag) out.push_back(c);
    }
    // Collapses whitespace.
    std::istringstream ss(out);
    std::string word, collapsed;
    while (ss >> word) {
        if (!collapsed.empty()) collapsed += " ";
        collapsed += word;
    }
    return collapsed;
}

struct UrlParts {
    std::string scheme_host; // http://host:port
    std::string path;        // /a/b.pdf
};

std::optional<UrlParts> split_url(const std::string& url) {
    size_t scheme = url.find("://");
    if (scheme == std::string::npos) return std::nullopt;
    size_t path_start = url.find('/', scheme + 3);
    if (path_start == std::string::npos)
        return UrlParts{url, "/"};
    return UrlParts{url.substr(0, path_start), url.substr(path_start)};
}

std::string now_iso8601() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

std::vector<AnchorTag> extract_anchors(const std::string& html) {
    std::vector<AnchorTag> out;
    std::string low = lower(html);
    size_t pos = 0;
    while (true) {
        size_t a = low.find("<a", pos);
        if (a == std::string::npos) break;
        if (a + 2 < low.size() && !std::isspace(static_cast<unsigned char>(low[a + 2])) &&
            low[a + 2] != '>') {
            pos = a + 2;
            continue;
        }
        size_t tag_end = html.find('>', a);
        if (tag_end == std::string::npos) break;
        std::string tag = html.substr(a, tag_end - a + 1);
        size_t close = low.find("</a", tag_end);
        std::string inner = close == std::string::npos
                                ? ""
                                : html.substr(tag_end + 1, close - tag_end - 1);
        pos = close == std::string::npos ? tag_end + 1 : close + 4;

        AnchorTag anchor;
        std::string tag_low = lower(tag);
        size_t href = tag_low.find("href");
        if (href != std::string::npos) {
            size_t eq = tag.find('=', href);
            if (eq != std::string::npos) {
                size_t v = eq + 1;
                while (v < tag.size() && std::isspace(static_cast<unsigned char>(tag[v]))) ++v;
                if (v < tag.size() && (tag[v] == '"' || tag[v] == '\'')) {
                    char quote = tag[v];
                    size_t end = tag.find(quote, v + 1);
                    if (end != std::string::npos) anchor.href = tag.substr(v + 1, end - v - 1);
                } else {
                    size_t end = v;
                    while (end < tag.size() && !std::isspace(static_cast<unsigned char>(tag[end])) &&
                           tag[end] != '>')
                        ++end;
                    anchor.href = tag.substr(v, end - v);
                }
            }
        }
        anchor.text = strip_tags(inner);
        if (!anchor.href.empty() || !anchor.text.empty()) out.push_back(std::move(anchor));
    }
    return out;
}

std::string resolve_url(const std::string& base, const std::string& href) {
    if (href.find("://") != std::string::npos) return href;
    auto parts = split_url(base);
    if (!parts) return href;
    if (!href.empty() && href[0] == '/') return parts->scheme_host + href;
    std::string dir = parts->path;
    size_t slash = dir.rfind('/');
    dir = slash == std::string::npos ? "/" : dir.substr(0, slash + 1);
    return parts->scheme_host + dir + href;
}

std::vector<BulletinRef> discover(const std::string& state_code,
                                  const std::string& listing_html,
                                  const std::string& base_url, const StateFetchConfig& cfg) {
    if (cfg.link_pattern.empty())
        throw ConfigError("state " + state_code + " has no link pattern configured");
    std::regex pattern(cfg.link_pattern, std::regex::ECMAScript | std::regex::icase);

    std::vector<BulletinRef> refs;
    std::set<std::string> seen_dates;
    for (const AnchorTag& anchor : extract_anchors(listing_html)) {
        if (!std::regex_search(anchor.href, pattern) &&
            !std::regex_search(anchor.text, pattern))
            continue;
        auto date = parse_date_any(anchor.text, cfg.date_formats);
        if (!date) date = parse_date_any(anchor.href, cfg.date_formats);
        if (!date) continue; // unparseable dates are skipped, never guessed
        if (!seen_dates.insert(date->iso()).second) continue;
        refs.push_back(BulletinRef{state_code, *date, resolve_url(base_url, anchor.href), ""});
    }
    std::sort(refs.begin(), refs.end(),
              [](const BulletinRef& a, const BulletinRef& b) { return a.date < b.date; });
    return refs;
}

Ledger Ledger::load(const std::string& path) {
    Ledger ledger;
    std::ifstream in(path);
    if (!in) return ledger;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception&) {
            continue; // torn tail line from a crash mid-append
        }
        LedgerEntry entry;
        entry.sha256 = j.value("sha256", "");
        entry.fetched_at = j.value("fetched_at", "");
        entry.status = j.value("status", "failed") == std::string("ok")
                           ? LedgerEntry::Status::ok
                           : LedgerEntry::Status::failed;
        ledger.entries_[{j.value("state", ""), j.value("date", "")}] = entry;
    }
    return ledger;
}

void Ledger::save(const std::string& path) const {
    fs::create_directories(fs::path(path).parent_path());
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        for (const auto& [key, entry] : entries_) {
            nlohmann::json j{{"state", key.first},
                             {"date", key.second},
                             {"sha256", entry.sha256},
                             {"fetched_at", entry.fetched_at},
                             {"status",
                              entry.status == LedgerEntry::Status::ok ? "ok" : "failed"}};
            out << j.dump() << "\n";
        }
    }
    fs::rename(tmp, path);
}

bool Ledger::has_ok(const std::string& state, const Date& date) const {
    const LedgerEntry* e = find(state, date);
    return e && e->status == LedgerEntry::Status::ok;
}

const LedgerEntry* Ledger::find(const std::string& state, const Date& date) const {
    auto it = entries_.find({state, date.iso()});
    return it == entries_.end() ? nullptr : &it->second;
}

void Ledger::set(const std::string& state, const Date& date, LedgerEntry entry) {
    entries_[{state, date.iso()}] = std::move(entry);
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string bytes = ss.str();
    return sha256_hex(bytes);
}

std::optional<std::string> http_get(const std::string& url, const FetchOptions& opts) {
    auto parts = split_url(url);
    if (!parts) return std::nullopt;
    for (int attempt = 0; attempt <= opts.retries; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(
                std::chrono::milliseconds(opts.retry_base_ms * (1 << (attempt - 1))));
        httplib::Client client(parts->scheme_host);
        client.set_follow_location(true);
        client.set_connection_timeout(opts.timeout_s);
        client.set_read_timeout(opts.timeout_s);
        client.set_default_headers({{"User-Agent", opts.user_agent}});
        auto res = client.Get(parts->path);
        if (res && res->status >= 200 && res->status < 300) return res->body;
    }
    return std::nullopt;
}

FetchOutcome fetch_new(const std::vector<BulletinRef>& refs, Ledger& ledger,
                       const std::string& dest_dir, const FetchOptions& opts) {
    FetchOutcome outcome;
    bool first = true;
    for (const BulletinRef& ref : refs) {
        if (ledger.has_ok(ref.state_code, ref.date)) continue;
        if (!first && opts.crawl_delay_ms > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(opts.crawl_delay_ms));
        first = false;

        auto body = http_get(ref.url, opts);
        if (!body) {
            ledger.set(ref.state_code, ref.date,
                       LedgerEntry{"", now_iso8601(), LedgerEntry::Status::failed});
            ++outcome.failed;
            continue;
        }
        fs::path dir = fs::path(dest_dir) / ref.state_code;
        fs::create_directories(dir);
        fs::path final_path = dir / (ref.date.iso() + ".pdf");
        fs::path tmp_path = dir / ("." + ref.date.iso() + ".pdf.tmp");
        {
            std::ofstream out(tmp_path, std::ios::binary);
            out << *body;
        }
        fs::rename(tmp_path, final_path);
        ledger.set(ref.state_code, ref.date,
                   LedgerEntry{sha256_hex(*body), now_iso8601(), LedgerEntry::Status::ok});
        BulletinRef done = ref;
        done.local_path = final_path.string();
        outcome.downloaded.push_back(std::move(done));
    }
    return outcome;
}

} // namespace bulletin
