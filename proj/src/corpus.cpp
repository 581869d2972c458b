#include "episense/corpus.hpp"
#include "episense/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace episense::corpus {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = (nl == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    // drop a single trailing empty line from the final newline
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

bool parse_count(std::string_view s, std::int64_t& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

RegionSeries parse_case_csv(std::string_view text, std::string region_id,
                            bool zero_fill) {
    auto lines = split_lines(text);
    if (lines.empty()) throw DataError("EmptyFile");
    if (lines[0] != "date,new_cases,recovered,deaths")
        throw DataError("MalformedRow: line 1 (bad header)");
    if (lines.size() < 2) throw DataError("EmptyFile");

    struct Row { std::int64_t nc, rec, de; };
    std::map<Date, Row> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        std::vector<std::string_view> fields;
        std::size_t pos = 0;
        while (true) {
            std::size_t c = line.find(',', pos);
            fields.push_back(c == std::string_view::npos ? line.substr(pos)
                                                         : line.substr(pos, c - pos));
            if (c == std::string_view::npos) break;
            pos = c + 1;
        }
        const std::string where = "line " + std::to_string(i + 1);
        if (fields.size() != 4) throw DataError("MalformedRow: " + where);
        Date d;
        try {
            d = parse_date(fields[0]);
        } catch (const DataError&) {
            throw DataError("MalformedRow: " + where);
        }
        Row r{};
        if (!parse_count(fields[1], r.nc) || !parse_count(fields[2], r.rec) ||
            !parse_count(fields[3], r.de))
            throw DataError("MalformedRow: " + where);
        if (r.nc < 0 || r.rec < 0 || r.de < 0)
            throw DataError("NegativeCount: " + where);
        if (!rows.emplace(d, r).second)
            throw DataError("DuplicateDate: " + d.iso());
    }

    RegionSeries out;
    out.region_id = std::move(region_id);
    out.start_date = rows.begin()->first;
    Date expect = out.start_date;
    for (const auto& [d, r] : rows) {
        while (expect < d) {
            if (!zero_fill) throw DataError("DateGap: " + expect.iso());
            out.new_cases.push_back(0);
            out.recovered.push_back(0);
            out.deaths.push_back(0);
            expect = expect + 1;
        }
        out.new_cases.push_back(r.nc);
        out.recovered.push_back(r.rec);
        out.deaths.push_back(r.de);
        expect = expect + 1;
    }
    return out;
}

std::string to_csv(const RegionSeries& series) {
    std::ostringstream os;
    os << "date,new_cases,recovered,deaths\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        os << (series.start_date + static_cast<std::int64_t>(i)).iso() << ','
           << series.new_cases[i] << ',' << series.recovered[i] << ','
           << series.deaths[i] << '\n';
    }
    return os.str();
}

std::vector<TweetRecord> parse_tweets_json(std::string_view text) {
    std::vector<TweetRecord> out;
    std::set<std::string> seen;
    auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const std::string where = "line " + std::to_string(i + 1);
        nlohmann::json j = nlohmann::json::parse(lines[i], nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw DataError("MalformedLine: " + where);
        for (const char* field : {"id", "timestamp", "region", "text"})
            if (!j.contains(field) || !j[field].is_string())
                throw DataError("MissingField: " + std::string(field) + ", " + where);
        TweetRecord rec;
        rec.id = j["id"].get<std::string>();
        if (rec.id.empty()) throw DataError("MalformedLine: " + where + " (empty id)");
        if (!seen.insert(rec.id).second)
            throw DataError("DuplicateId: " + rec.id);
        rec.timestamp_utc = parse_instant(j["timestamp"].get<std::string>());
        rec.region_id = j["region"].get<std::string>();
        rec.text = j["text"].get<std::string>();
        if (trim(rec.text).empty())
            throw DataError("MalformedLine: " + where + " (empty text)");
        out.push_back(std::move(rec));
    }
    return out;
}

DayBuckets bucket_by_day(const std::vector<TweetRecord>& tweets,
                         const std::string& region_id, int utc_offset_minutes,
                         Date from, Date to) {
    if (from > to) throw DataError("InvalidRange: " + from.iso() + " > " + to.iso());
    DayBuckets out;
    out.region_id = region_id;
    out.utc_offset_minutes = utc_offset_minutes;

    struct Key { std::int64_t ts; std::string id; Date day; };
    std::vector<Key> keys;
    for (const auto& t : tweets) {
        if (t.region_id != region_id) continue;
        Date d = local_date(t.timestamp_utc, utc_offset_minutes);
        if (d < from || d > to) continue;
        keys.push_back({t.timestamp_utc, t.id, d});
    }
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
        return std::tie(a.ts, a.id) < std::tie(b.ts, b.id);
    });
    for (auto& k : keys) out.buckets[k.day].push_back(std::move(k.id));
    return out;
}

} // namespace episense::corpus
