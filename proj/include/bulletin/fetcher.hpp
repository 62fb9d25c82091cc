#pragma once

#include "bulletin/dates.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bulletin {

struct BulletinRef {
    std::string state_code;
    Date date;
    std::string url;        // absolute
    std::string local_path; // set once downloaded
};

struct LedgerEntry {
    enum class Status { ok, failed };
    std::string sha256; // 64 lowercase hex chars when ok
    std::string fetched_at;
    Status status = Status::failed;
};

// Processed-date record, one JSON line per (state, date); load keeps the
// last entry per key so plain appends stay crash-safe, save compacts.
class Ledger {
public:
    static Ledger load(const std::string& path);
    void save(const std::string& path) const;

    bool has_ok(const std::string& state, const Date& date) const;
    const LedgerEntry* find(const std::string& state, const Date& date) const;
    void set(const std::string& state, const Date& date, LedgerEntry entry);
    std::size_t size() const { return entries_.size(); }
    const std::map<std::pair<std::string, std::string>, LedgerEntry>& entries() const {
        return entries_;
    }

private:
    std::map<std::pair<std::string, std::string>, LedgerEntry> entries_;
};

struct StateFetchConfig {
    std::string state_code;
    std::string listing_url;
    std::string base_url;     // defaults to listing_url
    std::string link_pattern; // regex tried on href, then anchor text
    std::vector<std::string> date_formats;
};

struct FetchOptions {
    std::string user_agent = "bulletin-etl/0.1 (public health data pipeline)";
    int retries = 3;
    int retry_base_ms = 2000; // exponential backoff start
    int crawl_delay_ms = 1000;
    int timeout_s = 30;
};

struct AnchorTag {
    std::string href;
    std::string text;
};

std::vector<AnchorTag> extract_anchors(const std::string& html);

std::string resolve_url(const std::string& base, const std::string& href);

// Anchors matching the state's link pattern become refs: dates parsed
// from link text or href, relative hrefs resolved, deduplicated by
// (state, date) keeping the first, sorted by date.
std::vector<BulletinRef> discover(const std::string& state_code,
                                  const std::string& listing_html,
                                  const std::string& base_url, const StateFetchConfig& cfg);

struct FetchOutcome {
    std::vector<BulletinRef> downloaded;
    int failed = 0;
};

// Downloads refs not yet ok in the ledger via temp-file-then-rename into
// dest_dir/{state}/{date}.pdf; records sha256 + status per ref. Network
// failure after the retry budget marks the entry failed and moves on.
FetchOutcome fetch_new(const std::vector<BulletinRef>& refs, Ledger& ledger,
                       const std::string& dest_dir, const FetchOptions& opts = {});

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::string& path);

// GET returning the body, or nullopt after retries; used by fetch_new and
// the discovery step.
std::optional<std::string> http_get(const std::string& url, const FetchOptions& opts);

} // namespace bulletin
