#ifndef EPISENSE_CORPUS_HPP
#define EPISENSE_CORPUS_HPP

#include "episense/date.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace episense::corpus {

/// Gap-free daily counts for one region. Index i corresponds to
/// start_date + i days.
struct RegionSeries {
    std::string region_id;
    Date start_date;
    std::vector<std::int64_t> new_cases;
    std::vector<std::int64_t> recovered;
    std::vector<std::int64_t> deaths;

    std::size_t size() const { return new_cases.size(); }
    Date end_date() const { return start_date + static_cast<std::int64_t>(size()) - 1; }
};

struct TweetRecord {
    std::string id;
    std::int64_t timestamp_utc = 0; // Unix seconds
    std::string region_id;
    std::string text;
};

struct DayBuckets {
    std::string region_id;
    int utc_offset_minutes = 0;
    std::map<Date, std::vector<std::string>> buckets; // date -> tweet ids
};

/// Parses `date,new_cases,recovered,deaths` CSV. Rows may arrive in any
/// order; output is sorted by date and gap-free. Interior missing dates are
/// an error unless zero_fill is set, in which case they become zero rows.
RegionSeries parse_case_csv(std::string_view text, std::string region_id,
                            bool zero_fill = false);

/// Inverse of parse_case_csv (LF line endings, header included).
std::string to_csv(const RegionSeries& series);

/// Newline-delimited JSON, one object per line with fields
/// id, timestamp, region, text. File order is preserved.
std::vector<TweetRecord> parse_tweets_json(std::string_view text);

/// Buckets tweets of one region by local calendar day over [from, to]
/// inclusive. Within a bucket ids are ordered by (timestamp, id).
DayBuckets bucket_by_day(const std::vector<TweetRecord>& tweets,
                         const std::string& region_id, int utc_offset_minutes,
                         Date from, Date to);

} // namespace episense::corpus

#endif
