#include "bulletin/analytics.hpp"

#include "bulletin/errors.hpp"

#include <algorithm>

namespace bulletin {

namespace {

// Last value at date <= limit, by binary search.
std::optional<std::int64_t> value_at_or_before(const CumulativeSeries& s, const Date& limit) {
    auto it = std::upper_bound(s.points.begin(), s.points.end(), limit,
                               [](const Date& d, const auto& p) { return d < p.first; });
    if (it == s.points.begin()) return std::nullopt;
    return std::prev(it)->second;
}

} // namespace

std::optional<std::int64_t> weekly_delta(const CumulativeSeries& series, const IsoWeek& week,
                                         bool* negative) {
    if (negative) *negative = false;
    auto end_value = value_at_or_before(series, week.sunday());
    auto start_value = value_at_or_before(series, week.monday() - 1);
    if (!end_value || !start_value) return std::nullopt;
    std::int64_t delta = *end_value - *start_value;
    if (delta < 0 && negative) *negative = true;
    return delta;
}

void Analytics::emit(QaCode code, QaSeverity sev, const std::string& state, const Date& date,
                     const std::string& table, const std::string& detail) const {
    if (qa_) qa_->push_back(QaRecord{state, date, table, sev, code, detail});
}

SeriesPoint Analytics::weekly_cfr(const std::string& state, const IsoWeek& week) const {
    SeriesPoint pt{state, week.monday(), Metric::weekly_cfr, std::nullopt};
    CumulativeSeries cases{store_.cumulative_series(state, "case_info", "cumulative_confirmed")};
    CumulativeSeries deaths{store_.cumulative_series(state, "case_info", "cumulative_deceased")};
    bool neg_cases = false, neg_deaths = false;
    auto case_delta = weekly_delta(cases, week, &neg_cases);
    auto death_delta = weekly_delta(deaths, week, &neg_deaths);
    if (neg_cases || neg_deaths)
        emit(QaCode::negative_delta, QaSeverity::warn, state, week.monday(), "case_info",
             std::string("negative weekly delta in ") +
                 (neg_cases ? "cumulative_confirmed" : "cumulative_deceased"));
    if (!case_delta || !death_delta || *case_delta == 0) return pt;

    // Cross-check against reported dailies when the column carries data.
    CumulativeSeries dailies{store_.cumulative_series(state, "case_info", "daily_confirmed")};
    if (!dailies.points.empty()) {
        std::int64_t sum = 0;
        int days = 0;
        for (const auto& [d, v] : dailies.points)
            if (d >= week.monday() && d <= week.sunday()) {
                sum += v;
                ++days;
            }
        if (days == 7 && sum != *case_delta)
            emit(QaCode::delta_mismatch, QaSeverity::warn, state, week.monday(), "case_info",
                 "daily sum " + std::to_string(sum) + " != cumulative delta " +
                     std::to_string(*case_delta));
    }

    pt.value = static_cast<double>(*death_delta) / static_cast<double>(*case_delta);
    return pt;
}

SeriesPoint Analytics::ratio_point(Metric metric, const std::string& state, const Date& date,
                                   const std::string& table, const std::string& num_col,
                                   const std::string& den_col) const {
    SeriesPoint pt{state, date, metric, std::nullopt};
    auto num = store_.int_at(state, date, table, num_col);
    auto den = store_.int_at(state, date, table, den_col);
    if (!num || !den || *den == 0) return pt;
    pt.value = static_cast<double>(*num) / static_cast<double>(*den);
    return pt;
}

SeriesPoint Analytics::rtpcr_share(const std::string& state, const Date& date) const {
    return ratio_point(Metric::rtpcr_share, state, date, "testing", "rtpcr_tests",
                       "total_tests");
}

SeriesPoint Analytics::bed_occupancy(const std::string& state, const Date& date) const {
    return ratio_point(Metric::bed_occupancy, state, date, "hospitalization",
                       "occupied_beds", "total_beds");
}

SeriesPoint Analytics::hospitalization_pct(const std::string& state, const Date& date) const {
    SeriesPoint pt{state, date, Metric::hospitalization_pct, std::nullopt};
    auto occupied = store_.int_at(state, date, "hospitalization", "occupied_beds");
    auto active = store_.int_at(state, date, "case_info", "active_cases");
    if (!occupied || !active || *active == 0) return pt;
    pt.value = static_cast<double>(*occupied) / static_cast<double>(*active);
    if (*pt.value > 1.0)
        emit(QaCode::ratio_out_of_range, QaSeverity::warn, state, date, "hospitalization",
             "occupied beds exceed active cases (reporting lag)");
    return pt;
}

std::vector<SeriesPoint> Analytics::series(const std::string& state, Metric metric,
                                           const Date& from, const Date& to) const {
    std::vector<SeriesPoint> out;
    if (metric == Metric::weekly_cfr) {
        for (IsoWeek w = iso_week_of(from); w.monday() <= to; w = w.next())
            out.push_back(weekly_cfr(state, w));
        return out;
    }
    std::string table = metric == Metric::rtpcr_share ? "testing" : "hospitalization";
    for (const Date& d : store_.dates_for(state, table)) {
        if (d < from || d > to) continue;
        switch (metric) {
        case Metric::rtpcr_share: out.push_back(rtpcr_share(state, d)); break;
        case Metric::bed_occupancy: out.push_back(bed_occupancy(state, d)); break;
        case Metric::hospitalization_pct:
            out.push_back(hospitalization_pct(state, d));
            break;
        default: break;
        }
    }
    return out;
}

Metric metric_from(const std::string& name) {
    if (name == "weekly_cfr") return Metric::weekly_cfr;
    if (name == "rtpcr_share") return Metric::rtpcr_share;
    if (name == "bed_occupancy") return Metric::bed_occupancy;
    if (name == "hospitalization_pct") return Metric::hospitalization_pct;
    throw ConfigError("unknown metric: " + name);
}

const char* to_string(Metric m) {
    switch (m) {
    case Metric::weekly_cfr: return "weekly_cfr";
    case Metric::rtpcr_share: return "rtpcr_share";
    case Metric::bed_occupancy: return "bed_occupancy";
    case Metric::hospitalization_pct: return "hospitalization_pct";
    }
    return "?";
}

} // namespace bulletin
