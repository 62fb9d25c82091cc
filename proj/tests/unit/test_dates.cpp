#include "bulletin/dates.hpp"

#include <doctest.h>

using namespace bulletin;

TEST_CASE("date iso round trip and weekday") {
    Date d(2021, 4, 15);
    CHECK(d.iso() == "2021-04-15");
    CHECK(Date::from_iso("2021-04-15") == d);
    CHECK(d.weekday() == 3); // a Thursday
    CHECK(Date(2020, 2, 29).iso() == "2020-02-29");
    CHECK_THROWS(Date(2021, 2, 29));
    CHECK_FALSE(Date::from_iso("2021-13-01").has_value());
}

TEST_CASE("iso week boundaries") {
    // 2021-04-15 is Thursday of ISO week 2021-W15 (Mon 2021-04-12).
    IsoWeek w = iso_week_of(Date(2021, 4, 15));
    CHECK(w.year == 2021);
    CHECK(w.week == 15);
    CHECK(w.monday().iso() == "2021-04-12");
    CHECK(w.sunday().iso() == "2021-04-18");
    // Year-boundary week: 2021-01-01 (Friday) belongs to 2020-W53.
    IsoWeek nyd = iso_week_of(Date(2021, 1, 1));
    CHECK(nyd.year == 2020);
    CHECK(nyd.week == 53);
    CHECK(iso_week_of(Date(2021, 1, 4)).week == 1);
    CHECK(w.next().week == 16);
}

TEST_CASE("date parsing against bulletin formats") {
    CHECK(parse_date("Health Bulletin 15-04-2021.pdf", "%d-%m-%Y")->iso() == "2021-04-15");
    CHECK(parse_date("bulletin 5/6/2020 final", "%d/%m/%Y")->iso() == "2020-06-05");
    CHECK(parse_date("Bulletin 15 April 2021", "%d %B %Y")->iso() == "2021-04-15");
    CHECK(parse_date("15th Apr 2021", "%d %B %Y") == std::nullopt); // "th" blocks the space
    CHECK(parse_date("Apr 15, 2021", "%B %d, %Y")->iso() == "2021-04-15");
    CHECK_FALSE(parse_date("no date here", "%d-%m-%Y").has_value());
    CHECK_FALSE(parse_date("32-01-2021", "%d-%m-%Y").has_value());

    std::vector<std::string> formats = {"%d-%m-%Y", "%d/%m/%Y", "%d %B %Y"};
    CHECK(parse_date_any("DL_bulletin_16/04/2021.pdf", formats)->iso() == "2021-04-16");
    CHECK_FALSE(parse_date_any("garbage", formats).has_value());
}
