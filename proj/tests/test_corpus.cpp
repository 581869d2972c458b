#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "episense/corpus.hpp"
#include "episense/errors.hpp"
#include "episense/synth.hpp"

#include <set>
#include <sstream>

using namespace episense;
using namespace episense::corpus;

TEST_CASE("case csv: single row identity") {
    auto s = parse_case_csv("date,new_cases,recovered,deaths\n2020-03-15,1,0,0", "r");
    CHECK(s.size() == 1);
    CHECK(s.new_cases == std::vector<std::int64_t>{1});
    CHECK(s.start_date == Date::from_ymd(2020, 3, 15));
}

TEST_CASE("case csv: interior gap is an error") {
    std::string text = "date,new_cases,recovered,deaths\n"
                       "2020-03-15,1,0,0\n2020-03-17,2,0,0\n";
    CHECK_THROWS_WITH_AS(parse_case_csv(text, "r"), "DateGap: 2020-03-16", DataError);
    auto filled = parse_case_csv(text, "r", /*zero_fill=*/true);
    CHECK(filled.size() == 3);
    CHECK(filled.new_cases == std::vector<std::int64_t>{1, 0, 2});
}

TEST_CASE("case csv: shuffled rows come back date-sorted") {
    std::string text = "date,new_cases,recovered,deaths\n"
                       "2020-03-17,8,1,0\n2020-03-15,5,0,0\n2020-03-16,3,2,1\n";
    auto s = parse_case_csv(text, "r");
    CHECK(s.new_cases == std::vector<std::int64_t>{5, 3, 8});
    CHECK(s.recovered == std::vector<std::int64_t>{0, 2, 1});
    CHECK(s.deaths == std::vector<std::int64_t>{0, 1, 0});
}

TEST_CASE("case csv: error rows") {
    CHECK_THROWS_AS(parse_case_csv("", "r"), DataError);
    CHECK_THROWS_AS(parse_case_csv("date,new_cases,recovered,deaths\n", "r"), DataError);
    CHECK_THROWS_AS(parse_case_csv("bad,header\n2020-03-15,1,0,0", "r"), DataError);
    CHECK_THROWS_WITH_AS(
        parse_case_csv("date,new_cases,recovered,deaths\n2020-03-15,-1,0,0", "r"),
        "NegativeCount: line 2", DataError);
    CHECK_THROWS_WITH_AS(
        parse_case_csv("date,new_cases,recovered,deaths\n2020-03-15,x,0,0", "r"),
        "MalformedRow: line 2", DataError);
    CHECK_THROWS_WITH_AS(
        parse_case_csv("date,new_cases,recovered,deaths\n"
                       "2020-03-15,1,0,0\n2020-03-15,2,0,0", "r"),
        "DuplicateDate: 2020-03-15", DataError);
}

TEST_CASE("case csv: CRLF accepted") {
    auto s = parse_case_csv(
        "date,new_cases,recovered,deaths\r\n2020-03-15,1,2,3\r\n", "r");
    CHECK(s.size() == 1);
    CHECK(s.recovered[0] == 2);
}

TEST_CASE("case csv: round trip over seeded random series") {
    synth::Rng rng(99);
    for (int iter = 0; iter < 25; ++iter) {
        RegionSeries s;
        s.region_id = "r";
        s.start_date = Date::from_ymd(2020, 3, 1) +
                       static_cast<std::int64_t>(rng.next_u64() % 60);
        int len = 1 + static_cast<int>(rng.next_u64() % 40);
        for (int i = 0; i < len; ++i) {
            s.new_cases.push_back(rng.next_u64() % 1000);
            s.recovered.push_back(rng.next_u64() % 1000);
            s.deaths.push_back(rng.next_u64() % 50);
        }
        auto reparsed = parse_case_csv(to_csv(s), "r");
        CHECK(reparsed.start_date == s.start_date);
        CHECK(reparsed.new_cases == s.new_cases);
        CHECK(reparsed.recovered == s.recovered);
        CHECK(reparsed.deaths == s.deaths);
    }
}

TEST_CASE("tweets: empty document") {
    CHECK(parse_tweets_json("").empty());
}

TEST_CASE("tweets: duplicate id rejected") {
    std::string text =
        R"({"id":"42","timestamp":"2020-04-15T00:00:00Z","region":"k","text":"a b"})"
        "\n"
        R"({"id":"42","timestamp":"2020-04-16T00:00:00Z","region":"k","text":"c d"})";
    CHECK_THROWS_WITH_AS(parse_tweets_json(text), "DuplicateId: 42", DataError);
}

TEST_CASE("tweets: file order preserved") {
    std::ostringstream os;
    for (int i = 5; i >= 1; --i)
        os << R"({"id":"t)" << i
           << R"(","timestamp":"2020-04-15T00:00:00Z","region":"k","text":"hi there"})"
           << "\n";
    auto tweets = parse_tweets_json(os.str());
    REQUIRE(tweets.size() == 5);
    CHECK(tweets.front().id == "t5");
    CHECK(tweets.back().id == "t1");
}

TEST_CASE("tweets: missing field and empty text") {
    CHECK_THROWS_WITH_AS(
        parse_tweets_json(R"({"id":"1","timestamp":"2020-04-15T00:00:00Z","text":"x y"})"),
        "MissingField: region, line 1", DataError);
    CHECK_THROWS_AS(
        parse_tweets_json(R"({"id":"1","timestamp":"2020-04-15T00:00:00Z","region":"k","text":"  "})"),
        DataError);
    CHECK_THROWS_AS(parse_tweets_json("not json"), DataError);
}

TEST_CASE("bucketing: no matching region leaves all buckets empty") {
    auto tweets = parse_tweets_json(
        R"({"id":"1","timestamp":"2020-04-15T12:00:00Z","region":"k","text":"a b"})");
    auto buckets = bucket_by_day(tweets, "other", 0, Date::from_ymd(2020, 4, 15),
                                 Date::from_ymd(2020, 4, 15));
    CHECK(buckets.buckets.empty());
}

TEST_CASE("bucketing: IST offset rolls 23:00Z to the next local day") {
    auto tweets = parse_tweets_json(
        R"({"id":"1","timestamp":"2020-04-15T23:00:00Z","region":"k","text":"a b"})");
    auto buckets = bucket_by_day(tweets, "k", 330, Date::from_ymd(2020, 4, 1),
                                 Date::from_ymd(2020, 4, 30));
    REQUIRE(buckets.buckets.size() == 1);
    CHECK(buckets.buckets.begin()->first == Date::from_ymd(2020, 4, 16));
}

TEST_CASE("bucketing: range ends are inclusive") {
    auto tweets = parse_tweets_json(
        R"({"id":"1","timestamp":"2020-04-15T00:00:00Z","region":"k","text":"a b"})");
    auto buckets = bucket_by_day(tweets, "k", 0, Date::from_ymd(2020, 4, 15),
                                 Date::from_ymd(2020, 4, 15));
    REQUIRE(buckets.buckets.count(Date::from_ymd(2020, 4, 15)) == 1);
    CHECK_THROWS_AS(bucket_by_day(tweets, "k", 0, Date::from_ymd(2020, 4, 16),
                                  Date::from_ymd(2020, 4, 15)),
                    DataError);
}

TEST_CASE("bucketing: partition property on seeded corpus") {
    synth::Rng rng(7);
    std::ostringstream os;
    for (int i = 0; i < 200; ++i) {
        int day = 10 + static_cast<int>(rng.next_u64() % 20);
        int hour = static_cast<int>(rng.next_u64() % 24);
        const char* region = (rng.next_u64() % 3 == 0) ? "k" : "m";
        os << R"({"id":"t)" << i << R"(","timestamp":"2020-04-)"
           << (day < 10 ? "0" : "") << day << 'T' << (hour < 10 ? "0" : "")
           << hour << R"(:00:00Z","region":")" << region << R"(","text":"x y"})"
           << "\n";
    }
    auto tweets = parse_tweets_json(os.str());
    Date from = Date::from_ymd(2020, 4, 12), to = Date::from_ymd(2020, 4, 25);
    auto buckets = bucket_by_day(tweets, "k", 330, from, to);

    std::size_t expected = 0;
    for (const auto& t : tweets) {
        Date d = local_date(t.timestamp_utc, 330);
        if (t.region_id == "k" && d >= from && d <= to) ++expected;
    }
    std::size_t total = 0;
    std::set<std::string> ids;
    for (const auto& [day, bucket] : buckets.buckets) {
        CHECK(day >= from);
        CHECK(day <= to);
        total += bucket.size();
        for (const auto& id : bucket) CHECK(ids.insert(id).second);
    }
    CHECK(total == expected);
}
