#pragma once

#include "bulletin/dates.hpp"
#include "bulletin/persistence.hpp"
#include "bulletin/qa.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bulletin {

enum class Metric { weekly_cfr, rtpcr_share, bed_occupancy, hospitalization_pct };

struct SeriesPoint {
    std::string state_code;
    Date period_start;
    Metric metric = Metric::weekly_cfr;
    std::optional<double> value; // null only on zero denominator or NULL inputs
};

// Ordered (date, value) pairs of one cumulative column.
struct CumulativeSeries {
    std::vector<std::pair<Date, std::int64_t>> points; // dates strictly increasing
};

// Endpoint difference across the ISO week: value at the last date <= week
// end minus value at the last date < week start; null when either endpoint
// is missing. Negative deltas are returned as-is and flagged via
// *negative.
std::optional<std::int64_t> weekly_delta(const CumulativeSeries& series, const IsoWeek& week,
                                         bool* negative = nullptr);

// The four bulletin analyses over the store. QA anomalies (negative
// deltas, ratios above 1, daily-vs-cumulative disagreement) land in the
// sink when one is attached.
class Analytics {
public:
    explicit Analytics(const Store& store, std::vector<QaRecord>* qa_sink = nullptr)
        : store_(store), qa_(qa_sink) {}

    SeriesPoint weekly_cfr(const std::string& state, const IsoWeek& week) const;
    SeriesPoint rtpcr_share(const std::string& state, const Date& date) const;
    SeriesPoint bed_occupancy(const std::string& state, const Date& date) const;
    SeriesPoint hospitalization_pct(const std::string& state, const Date& date) const;

    std::vector<SeriesPoint> series(const std::string& state, Metric metric, const Date& from,
                                    const Date& to) const;

private:
    void emit(QaCode code, QaSeverity sev, const std::string& state, const Date& date,
              const std::string& table, const std::string& detail) const;
    SeriesPoint ratio_point(Metric metric, const std::string& state, const Date& date,
                            const std::string& table, const std::string& num_col,
                            const std::string& den_col) const;

    const Store& store_;
    std::vector<QaRecord>* qa_;
};

Metric metric_from(const std::string& name);
const char* to_string(Metric m);

} // namespace bulletin
