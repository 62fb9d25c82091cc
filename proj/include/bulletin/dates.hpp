#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bulletin {

// Calendar date stored as days since 1970-01-01 (proleptic Gregorian).
class Date {
public:
    Date() = default;
    Date(int year, int month, int day);

    static std::optional<Date> from_iso(const std::string& s); // YYYY-MM-DD
    static Date from_days(std::int64_t days);

    int year() const;
    int month() const;
    int day() const;
    std::int64_t days() const { return days_; }

    // 0 = Monday .. 6 = Sunday.
    int weekday() const;

    std::string iso() const;

    Date operator+(int n) const { return from_days(days_ + n); }
    Date operator-(int n) const { return from_days(days_ - n); }
    auto operator<=>(const Date&) const = default;

private:
    std::int64_t days_ = 0;
};

// ISO-8601 week: Monday start.
struct IsoWeek {
    int year = 0;
    int week = 0;

    Date monday() const;
    Date sunday() const { return monday() + 6; }
    IsoWeek next() const;
    auto operator<=>(const IsoWeek&) const = default;
};

IsoWeek iso_week_of(Date d);

// Parses `text` against a small strftime-like format language:
//   %d day (1-2 digits), %m month (1-2 digits), %Y 4-digit year,
//   %y 2-digit year (2000-based), %b / %B English month name (any casing,
//   abbreviated or full). Any other character must match literally except
//   that a space in the format matches a nonempty run of whitespace.
std::optional<Date> parse_date(const std::string& text, const std::string& format);

// First format that parses wins; the date may be embedded in surrounding text.
std::optional<Date> parse_date_any(const std::string& text,
                                   const std::vector<std::string>& formats);

} // namespace bulletin
