#ifndef EPISENSE_DATE_HPP
#define EPISENSE_DATE_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace episense {

/// Calendar date stored as days since 1970-01-01 (proleptic Gregorian).
/// Small value type so series indices and date arithmetic stay trivial.
struct Date {
    std::int64_t days = 0;

    constexpr Date() = default;
    constexpr explicit Date(std::int64_t serial) : days(serial) {}

    static Date from_ymd(int year, int month, int day);
    void to_ymd(int& year, int& month, int& day) const;

    /// "YYYY-MM-DD"
    std::string iso() const;

    constexpr Date operator+(std::int64_t n) const { return Date{days + n}; }
    constexpr Date operator-(std::int64_t n) const { return Date{days - n}; }
    constexpr std::int64_t operator-(Date o) const { return days - o.days; }
    constexpr auto operator<=>(const Date&) const = default;
};

/// Parses "YYYY-MM-DD". Throws episense::DataError on malformed input.
Date parse_date(std::string_view text);

/// Parses an ISO-8601 instant ("2020-04-15T23:00:00Z", offsets "+05:30" or
/// "+0530" accepted, seconds optional) into Unix seconds (UTC).
std::int64_t parse_instant(std::string_view text);

/// Local calendar date of a UTC instant shifted by a fixed offset.
Date local_date(std::int64_t unix_seconds, int utc_offset_minutes);

} // namespace episense

#endif
