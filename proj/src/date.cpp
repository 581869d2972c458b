#include "episense/date.hpp"
#include "episense/errors.hpp"

#include <charconv>
#include <cstdio>

namespace episense {

namespace {

// Howard Hinnant's civil calendar algorithms.
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
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yr + (m <= 2));
}

bool parse_int(std::string_view s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

} // namespace

Date Date::from_ymd(int year, int month, int day) {
    return Date{days_from_civil(year, month, day)};
}

void Date::to_ymd(int& year, int& month, int& day) const {
    civil_from_days(days, year, month, day);
}

std::string Date::iso() const {
    int y, m, d;
    to_ymd(y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return buf;
}

Date parse_date(std::string_view text) {
    int y, m, d;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
        !parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
        !parse_int(text.substr(8, 2), d) || m < 1 || m > 12 || d < 1 || d > 31)
        throw DataError("MalformedDate: '" + std::string(text) + "'");
    return Date::from_ymd(y, m, d);
}

std::int64_t parse_instant(std::string_view text) {
    if (text.size() < 16 || text[10] != 'T')
        throw DataError("MalformedTimestamp: '" + std::string(text) + "'");
    Date day = parse_date(text.substr(0, 10));
    int hh, mm, ss = 0;
    if (!parse_int(text.substr(11, 2), hh) || text[13] != ':' ||
        !parse_int(text.substr(14, 2), mm) || hh > 23 || mm > 59)
        throw DataError("MalformedTimestamp: '" + std::string(text) + "'");
    std::size_t pos = 16;
    if (pos < text.size() && text[pos] == ':') {
        if (pos + 3 > text.size() || !parse_int(text.substr(pos + 1, 2), ss) || ss > 60)
            throw DataError("MalformedTimestamp: '" + std::string(text) + "'");
        pos += 3;
    }
    int offset_min = 0;
    if (pos < text.size()) {
        char c = text[pos];
        if (c == 'Z' && pos + 1 == text.size()) {
            offset_min = 0;
        } else if (c == '+' || c == '-') {
            std::string_view rest = text.substr(pos + 1);
            int oh, om;
            bool ok = false;
            if (rest.size() == 5 && rest[2] == ':')
                ok = parse_int(rest.substr(0, 2), oh) && parse_int(rest.substr(3, 2), om);
            else if (rest.size() == 4)
                ok = parse_int(rest.substr(0, 2), oh) && parse_int(rest.substr(2, 2), om);
            else if (rest.size() == 2) {
                ok = parse_int(rest, oh);
                om = 0;
            }
            if (!ok)
                throw DataError("MalformedTimestamp: '" + std::string(text) + "'");
            offset_min = oh * 60 + om;
            if (c == '-') offset_min = -offset_min;
        } else {
            throw DataError("MalformedTimestamp: '" + std::string(text) + "'");
        }
    }
    std::int64_t secs = day.days * 86400 + hh * 3600 + mm * 60 + ss;
    return secs - static_cast<std::int64_t>(offset_min) * 60;
}

Date local_date(std::int64_t unix_seconds, int utc_offset_minutes) {
    std::int64_t shifted = unix_seconds + static_cast<std::int64_t>(utc_offset_minutes) * 60;
    // floor division for instants before the epoch
    std::int64_t d = shifted >= 0 ? shifted / 86400 : (shifted - 86399) / 86400;
    return Date{d};
}

} // namespace episense
