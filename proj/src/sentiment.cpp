#include "episense/sentiment.hpp"
#include "episense/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace episense::sentiment {

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
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

bool parse_double(std::string_view s, double& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

bool parse_ll(std::string_view s, std::int64_t& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

} // namespace

Lexicon load_lexicon(std::string_view text) {
    Lexicon lex;
    auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        if (line.empty() || line[0] == '#') continue;
        const std::string where = "line " + std::to_string(i + 1);
        if (line[0] == '!') {
            std::string neg(line.substr(1));
            if (neg.empty()) throw DataError("MalformedRow: " + where);
            lex.negators.insert(std::move(neg));
            continue;
        }
        std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw DataError("MalformedRow: " + where);
        double w;
        if (!parse_double(line.substr(tab + 1), w) || !std::isfinite(w) ||
            w < -1.0 || w > 1.0)
            throw DataError("MalformedRow: " + where);
        std::string token(line.substr(0, tab));
        if (!lex.weights.emplace(std::move(token), w).second)
            throw DataError("DuplicateToken: " + std::string(line.substr(0, tab)));
    }
    return lex;
}

double score_tweet(const Lexicon& lex, std::string_view text) {
    auto tokens = concepts::tokenize(text, {});
    double sum = 0.0;
    int hits = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto it = lex.weights.find(tokens[i]);
        if (it == lex.weights.end()) continue;
        double w = it->second;
        std::size_t lo = i >= static_cast<std::size_t>(lex.negation_window)
                             ? i - lex.negation_window
                             : 0;
        for (std::size_t j = lo; j < i; ++j) {
            if (lex.negators.count(tokens[j])) {
                w = -w;
                break;
            }
        }
        sum += w;
        ++hits;
    }
    if (hits == 0) return 0.0;
    return std::clamp(sum / hits, -1.0, 1.0);
}

std::map<std::string, double> load_precomputed(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty() || lines[0] != "tweet_id,score")
        throw DataError("MalformedRow: bad scores header");
    std::map<std::string, double> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        const std::string where = "line " + std::to_string(i + 1);
        std::size_t c = line.find(',');
        if (c == std::string_view::npos) throw DataError("MalformedRow: " + where);
        double score;
        if (!parse_double(line.substr(c + 1), score))
            throw DataError("MalformedRow: " + where);
        if (score < -1.0 || score > 1.0)
            throw DataError("OutOfRangeScore: " + where);
        std::string id(line.substr(0, c));
        if (!out.emplace(std::move(id), score).second)
            throw DataError("DuplicateId: " + std::string(line.substr(0, c)));
    }
    return out;
}

DailySentiment daily_sentiment(const std::vector<concepts::ConceptMatch>& matches,
                               const std::map<std::string, double>& scores,
                               Date from, Date to, bool per_tweet,
                               bool carry_forward) {
    if (from > to) throw DataError("InvalidRange: " + from.iso() + " > " + to.iso());
    const std::int64_t days = to - from + 1;
    DailySentiment out;
    out.start_date = from;
    out.values.assign(days, 0.0);
    out.coverage.assign(days, 0);

    std::vector<double> sums(days, 0.0);
    std::set<std::pair<std::int64_t, std::string>> seen; // (day, tweet) for per_tweet
    for (const auto& m : matches) {
        if (m.local_date < from || m.local_date > to) continue;
        auto it = scores.find(m.tweet_id);
        if (it == scores.end())
            throw DataError("MissingScore: " + m.tweet_id);
        std::int64_t d = m.local_date - from;
        if (per_tweet && !seen.insert({d, m.tweet_id}).second) continue;
        sums[d] += it->second;
        ++out.coverage[d];
    }
    for (std::int64_t d = 0; d < days; ++d) {
        if (out.coverage[d] > 0) {
            out.values[d] = sums[d] / out.coverage[d];
        } else if (carry_forward && d > 0) {
            out.values[d] = out.values[d - 1];
        }
    }
    return out;
}

std::string to_csv(const DailySentiment& daily) {
    std::ostringstream os;
    os << "date,value,coverage\n";
    char buf[32];
    for (std::size_t i = 0; i < daily.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.6f", daily.values[i]);
        os << (daily.start_date + static_cast<std::int64_t>(i)).iso() << ','
           << buf << ',' << daily.coverage[i] << '\n';
    }
    return os.str();
}

DailySentiment parse_daily_csv(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty() || lines[0] != "date,value,coverage")
        throw DataError("MalformedRow: bad sentiment header");
    if (lines.size() < 2) throw DataError("EmptyFile");
    DailySentiment out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        const std::string where = "line " + std::to_string(i + 1);
        std::size_t c1 = line.find(',');
        std::size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string_view::npos) throw DataError("MalformedRow: " + where);
        Date d = parse_date(line.substr(0, c1));
        double v;
        std::int64_t cov;
        if (!parse_double(line.substr(c1 + 1, c2 - c1 - 1), v) ||
            !parse_ll(line.substr(c2 + 1), cov) || cov < 0)
            throw DataError("MalformedRow: " + where);
        if (i == 1) out.start_date = d;
        else if (d != out.start_date + static_cast<std::int64_t>(out.values.size()))
            throw DataError("DateGap: " + d.iso());
        out.values.push_back(v);
        out.coverage.push_back(cov);
    }
    return out;
}

} // namespace episense::sentiment
