#ifndef EPISENSE_CONCEPTS_HPP
#define EPISENSE_CONCEPTS_HPP

#include "episense/corpus.hpp"
#include "episense/date.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace episense::concepts {

struct EmbeddingStore {
    int dimension = 0;
    std::unordered_map<std::string, std::vector<double>> table;

    const std::vector<double>* lookup(const std::string& token) const {
        auto it = table.find(token);
        return it == table.end() ? nullptr : &it->second;
    }
};

struct Concept {
    std::string name;
    std::vector<double> vector;
};

struct ConceptSet {
    std::vector<Concept> concepts;
};

struct MatcherConfig {
    double threshold = 0.45; // inclusive
    int max_ngram = 3;
    std::set<std::string> stopwords;
    bool whole_tweet = false; // single mean-of-all-tokens candidate
};

struct ConceptMatch {
    std::string tweet_id;
    std::string concept_name;
    double similarity = 0.0;
    std::string matched_phrase;
    Date local_date;
};

struct ConceptCloud {
    Date from, to;
    std::map<std::string, std::int64_t> counts;
};

/// Text embedding file: header "<count> <dimension>", then
/// "token v1 ... vd" lines. Tokens are lowercased on load.
EmbeddingStore load_embeddings(std::string_view text);

/// One concept per line: "name<TAB>optional phrase override". The concept
/// vector is embed_phrase() of the override (or of the name itself).
ConceptSet load_concepts(std::string_view text, const EmbeddingStore& store);

/// Commonly used English stopwords (small built-in list).
const std::set<std::string>& default_stopwords();

/// Lowercases, strips URLs / @mentions / leading '#', splits on
/// non-alphanumerics, drops stopwords, pure numbers and 1-char tokens.
std::vector<std::string> tokenize(std::string_view text,
                                  const std::set<std::string>& stopwords);

/// All contiguous n-grams for n = 1..max_ngram, left to right,
/// first occurrence wins on duplicates.
std::vector<std::string> phrase_candidates(const std::vector<std::string>& tokens,
                                           int max_ngram);

/// Mean of in-vocabulary token vectors; nullopt if everything is OOV.
std::optional<std::vector<double>> embed_phrase(const EmbeddingStore& store,
                                                const std::string& phrase);

double cosine(const std::vector<double>& u, const std::vector<double>& v);

/// Best candidate phrase per concept; emits a match iff best similarity
/// >= cfg.threshold. Output sorted by concept name.
std::vector<ConceptMatch> match_concepts(const corpus::TweetRecord& tweet,
                                         Date tweet_local_date,
                                         const EmbeddingStore& store,
                                         const ConceptSet& concept_set,
                                         const MatcherConfig& cfg);

/// Frequency table of matches with local_date in [from, to].
ConceptCloud concept_cloud(const std::vector<ConceptMatch>& matches,
                           Date from, Date to);

/// CSV "tweet_id,local_date,concept,similarity,matched_phrase",
/// similarity with 6 decimals.
std::string matches_to_csv(const std::vector<ConceptMatch>& matches);
std::vector<ConceptMatch> parse_matches_csv(std::string_view text);

/// CSV "concept,count" in count-descending, name-ascending order.
std::string cloud_to_csv(const ConceptCloud& cloud);

} // namespace episense::concepts

#endif
