#ifndef EPISENSE_SENTIMENT_HPP
#define EPISENSE_SENTIMENT_HPP

#include "episense/concepts.hpp"
#include "episense/date.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace episense::sentiment {

/// Deterministic lexicon scorer: signed token weights with sign flips when a
/// negator appears within negation_window tokens before a weighted token.
struct Lexicon {
    std::map<std::string, double> weights; // token -> weight in [-1,1]
    std::set<std::string> negators;
    int negation_window = 3;
};

struct DailySentiment {
    Date start_date;
    std::vector<double> values;         // mean matched-tweet score per day
    std::vector<std::int64_t> coverage; // matches contributing per day

    std::size_t size() const { return values.size(); }
    Date end_date() const { return start_date + static_cast<std::int64_t>(values.size()) - 1; }
};

/// Lexicon file: "token<TAB>weight" lines; "!token" lines declare negators.
Lexicon load_lexicon(std::string_view text);

/// Mean of matched token weights (negation-adjusted), clamped to [-1,1];
/// 0 when nothing matches.
double score_tweet(const Lexicon& lex, std::string_view text);

/// CSV "tweet_id,score" with scores in [-1,1].
std::map<std::string, double> load_precomputed(std::string_view text);

/// Per-day mean score over concept matches in [from, to]. A tweet matched to
/// k concepts contributes k times (per_tweet collapses that to once). Days
/// without coverage get 0, or the previous value with carry_forward.
DailySentiment daily_sentiment(const std::vector<concepts::ConceptMatch>& matches,
                               const std::map<std::string, double>& scores,
                               Date from, Date to, bool per_tweet = false,
                               bool carry_forward = false);

/// CSV "date,value,coverage".
std::string to_csv(const DailySentiment& daily);
DailySentiment parse_daily_csv(std::string_view text);

} // namespace episense::sentiment

#endif
