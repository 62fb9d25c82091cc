#include "bulletin/dates.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace bulletin {

namespace {

// Howard Hinnant's civil <-> days algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

bool days_in_month_ok(int y, int m, int d) {
    static const int dim[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m < 1 || m > 12 || d < 1) return false;
    int lim = dim[m - 1];
    bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (m == 2 && leap) lim = 29;
    return d <= lim;
}

const std::array<std::string, 12> kMonthNames = {
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// Matches a month name (full or >=3-letter prefix) at text[pos]; returns month 1-12.
int match_month_name(const std::string& text, size_t& pos) {
    size_t end = pos;
    while (end < text.size() && std::isalpha(static_cast<unsigned char>(text[end]))) ++end;
    if (end - pos < 3) return 0;
    std::string word = lower(text.substr(pos, end - pos));
    for (int i = 0; i < 12; ++i) {
        const std::string& name = kMonthNames[static_cast<size_t>(i)];
        if (word == name || (word.size() >= 3 && name.compare(0, word.size(), word) == 0)) {
            pos = end;
            return i + 1;
        }
    }
    return 0;
}

int read_digits(const std::string& text, size_t& pos, int min_len, int max_len) {
    size_t start = pos;
    int value = 0;
    while (pos < text.size() && pos - start < static_cast<size_t>(max_len) &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + (text[pos] - '0');
        ++pos;
    }
    if (pos - start < static_cast<size_t>(min_len)) return -1;
    return value;
}

// Attempts a match of the whole format starting at text[start].
std::optional<Date> match_at(const std::string& text, size_t start, const std::string& fmt) {
    size_t pos = start;
    int y = -1, m = -1, d = -1;
    for (size_t fi = 0; fi < fmt.size(); ++fi) {
        if (fmt[fi] == '%' && fi + 1 < fmt.size()) {
            char spec = fmt[++fi];
            switch (spec) {
            case 'd': d = read_digits(text, pos, 1, 2); if (d < 0) return std::nullopt; break;
            case 'm': m = read_digits(text, pos, 1, 2); if (m < 0) return std::nullopt; break;
            case 'Y': y = read_digits(text, pos, 4, 4); if (y < 0) return std::nullopt; break;
            case 'y': {
                int v = read_digits(text, pos, 2, 2);
                if (v < 0) return std::nullopt;
                y = 2000 + v;
                break;
            }
            case 'b':
            case 'B': m = match_month_name(text, pos); if (m == 0) return std::nullopt; break;
            case '%':
                if (pos >= text.size() || text[pos] != '%') return std::nullopt;
                ++pos;
                break;
            default: return std::nullopt;
            }
        } else if (fmt[fi] == ' ') {
            size_t before = pos;
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == before) return std::nullopt;
        } else {
            if (pos >= text.size() || text[pos] != fmt[fi]) return std::nullopt;
            ++pos;
        }
    }
    if (y < 0 || m < 1 || d < 0) return std::nullopt;
    if (!days_in_month_ok(y, m, d)) return std::nullopt;
    // Digit-boundary guard: "32-01-2021" must not match as "2-01-2021".
    if (start > 0 && std::isdigit(static_cast<unsigned char>(text[start - 1])) &&
        std::isdigit(static_cast<unsigned char>(text[start])))
        return std::nullopt;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])) &&
        std::isdigit(static_cast<unsigned char>(text[pos - 1])))
        return std::nullopt;
    return Date(y, m, d);
}

} // namespace

Date::Date(int year, int month, int day) {
    if (!days_in_month_ok(year, month, day))
        throw std::invalid_argument("invalid calendar date");
    days_ = days_from_civil(year, month, day);
}

std::optional<Date> Date::from_iso(const std::string& s) {
    return parse_date(s, "%Y-%m-%d");
}

Date Date::from_days(std::int64_t days) {
    Date d;
    d.days_ = days;
    return d;
}

int Date::year() const {
    int y, m, d;
    civil_from_days(days_, y, m, d);
    return y;
}

int Date::month() const {
    int y, m, d;
    civil_from_days(days_, y, m, d);
    return m;
}

int Date::day() const {
    int y, m, d;
    civil_from_days(days_, y, m, d);
    return d;
}

int Date::weekday() const {
    // 1970-01-01 was a Thursday (index 3 with Monday = 0).
    std::int64_t w = (days_ + 3) % 7;
    if (w < 0) w += 7;
    return static_cast<int>(w);
}

std::string Date::iso() const {
    int y, m, d;
    civil_from_days(days_, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, d);
    return buf;
}

Date IsoWeek::monday() const {
    // Jan 4 is always in ISO week 1.
    Date jan4(year, 1, 4);
    Date week1_monday = jan4 - jan4.weekday();
    return week1_monday + (week - 1) * 7;
}

IsoWeek IsoWeek::next() const {
    return iso_week_of(monday() + 7);
}

IsoWeek iso_week_of(Date d) {
    Date thursday = d + (3 - d.weekday());
    int y = thursday.year();
    Date jan4(y, 1, 4);
    Date week1_monday = jan4 - jan4.weekday();
    int week = static_cast<int>((thursday.days() - week1_monday.days()) / 7) + 1;
    return IsoWeek{y, week};
}

std::optional<Date> parse_date(const std::string& text, const std::string& format) {
    for (size_t start = 0; start <= text.size(); ++start) {
        if (auto d = match_at(text, start, format)) return d;
        if (start == text.size()) break;
    }
    return std::nullopt;
}

std::optional<Date> parse_date_any(const std::string& text,
                                   const std::vector<std::string>& formats) {
    for (const auto& fmt : formats)
        if (auto d = parse_date(text, fmt)) return d;
    return std::nullopt;
}

} // namespace bulletin
