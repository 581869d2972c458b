#include "episense/concepts.hpp"
#include "episense/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace episense::concepts {

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

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

bool parse_double(std::string_view s, double& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool all_digits(std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

} // namespace

EmbeddingStore load_embeddings(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw DataError("HeaderMismatch: empty file");
    auto header = split_ws(lines[0]);
    long count = 0, dim = 0;
    if (header.size() != 2 ||
        std::from_chars(header[0].data(), header[0].data() + header[0].size(), count).ec != std::errc{} ||
        std::from_chars(header[1].data(), header[1].data() + header[1].size(), dim).ec != std::errc{} ||
        count < 0 || dim <= 0)
        throw DataError("HeaderMismatch: expected '<count> <dimension>'");

    EmbeddingStore store;
    store.dimension = static_cast<int>(dim);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto fields = split_ws(lines[i]);
        const std::string where = "line " + std::to_string(i + 1);
        if (static_cast<long>(fields.size()) != dim + 1)
            throw DataError("DimensionMismatch: " + where);
        std::string token = lower(fields[0]);
        std::vector<double> vec(dim);
        for (long k = 0; k < dim; ++k) {
            if (!parse_double(fields[k + 1], vec[k]) || !std::isfinite(vec[k]))
                throw DataError("DimensionMismatch: " + where);
        }
        if (!store.table.emplace(std::move(token), std::move(vec)).second)
            throw DataError("DuplicateToken: " + lower(fields[0]));
    }
    if (static_cast<long>(store.table.size()) != count)
        throw DataError("HeaderMismatch: declared " + std::to_string(count) +
                        " entries, found " + std::to_string(store.table.size()));
    return store;
}

ConceptSet load_concepts(std::string_view text, const EmbeddingStore& store) {
    ConceptSet cs;
    std::set<std::string> names;
    auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::string_view line = lines[i];
        std::size_t tab = line.find('\t');
        std::string name(line.substr(0, tab));
        std::string phrase = tab == std::string_view::npos
                                 ? name
                                 : std::string(line.substr(tab + 1));
        if (name.empty())
            throw DataError("MalformedRow: line " + std::to_string(i + 1));
        if (!names.insert(name).second)
            throw DataError("DuplicateConcept: " + name);
        auto vec = embed_phrase(store, phrase);
        if (!vec)
            throw DataError("OutOfVocabularyConcept: " + name);
        cs.concepts.push_back({std::move(name), std::move(*vec)});
    }
    if (cs.concepts.empty()) throw DataError("EmptyFile: no concepts");
    return cs;
}

const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words = {
        "a",    "an",   "and",  "are",  "as",   "at",   "be",   "by",
        "for",  "from", "has",  "have", "he",   "her",  "his",  "in",
        "is",   "it",   "its",  "of",   "on",   "or",   "our",  "she",
        "that", "the",  "their", "they", "this", "to",   "was",  "we",
        "were", "will", "with", "you"};
    return words;
}

std::vector<std::string> tokenize(std::string_view text,
                                  const std::set<std::string>& stopwords) {
    std::string work(text);
    // blank out URLs and @mentions before splitting
    for (const char* prefix : {"http://", "https://", "www.", "@"}) {
        std::size_t pos = 0;
        const std::size_t plen = std::string_view(prefix).size();
        while ((pos = work.find(prefix, pos)) != std::string::npos) {
            if (std::string_view(prefix) == "www." && pos > 0 &&
                (std::isalnum(static_cast<unsigned char>(work[pos - 1])))) {
                pos += plen;
                continue;
            }
            std::size_t end = pos;
            while (end < work.size() &&
                   !std::isspace(static_cast<unsigned char>(work[end])))
                ++end;
            work.replace(pos, end - pos, end - pos, ' ');
        }
    }
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < work.size()) {
        while (i < work.size() && !std::isalnum(static_cast<unsigned char>(work[i]))) ++i;
        std::size_t j = i;
        while (j < work.size() && std::isalnum(static_cast<unsigned char>(work[j]))) ++j;
        if (j > i) {
            std::string tok = lower(std::string_view(work).substr(i, j - i));
            if (tok.size() >= 2 && !all_digits(tok) && !stopwords.count(tok))
                tokens.push_back(std::move(tok));
        }
        i = j;
    }
    return tokens;
}

std::vector<std::string> phrase_candidates(const std::vector<std::string>& tokens,
                                           int max_ngram) {
    if (max_ngram < 1) throw ConfigError("InvalidMaxNgram");
    // left-to-right by start index, then by n-gram length
    std::vector<std::string> ordered;
    std::set<std::string> emitted;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        for (int n = 1; n <= max_ngram && i + n <= tokens.size(); ++n) {
            std::string phrase = tokens[i];
            for (int k = 1; k < n; ++k) phrase += " " + tokens[i + k];
            if (emitted.insert(phrase).second) ordered.push_back(std::move(phrase));
        }
    }
    return ordered;
}

std::optional<std::vector<double>> embed_phrase(const EmbeddingStore& store,
                                                const std::string& phrase) {
    auto tokens = tokenize(phrase, {});
    std::vector<double> sum(store.dimension, 0.0);
    int hits = 0;
    for (const auto& tok : tokens) {
        if (const auto* vec = store.lookup(tok)) {
            for (int k = 0; k < store.dimension; ++k) sum[k] += (*vec)[k];
            ++hits;
        }
    }
    if (hits == 0) return std::nullopt;
    for (auto& v : sum) v /= hits;
    return sum;
}

double cosine(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size()) throw DataError("DimensionMismatch: cosine");
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0) throw DataError("ZeroVector: cosine undefined");
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

std::vector<ConceptMatch> match_concepts(const corpus::TweetRecord& tweet,
                                         Date tweet_local_date,
                                         const EmbeddingStore& store,
                                         const ConceptSet& concept_set,
                                         const MatcherConfig& cfg) {
    auto tokens = tokenize(tweet.text, cfg.stopwords);
    std::vector<std::string> candidates;
    if (cfg.whole_tweet) {
        std::string all;
        for (const auto& t : tokens) {
            if (!all.empty()) all += ' ';
            all += t;
        }
        if (!all.empty()) candidates.push_back(std::move(all));
    } else {
        candidates = phrase_candidates(tokens, cfg.max_ngram);
    }

    // embed every candidate once
    std::vector<std::optional<std::vector<double>>> embedded;
    embedded.reserve(candidates.size());
    for (const auto& c : candidates) embedded.push_back(embed_phrase(store, c));

    std::vector<ConceptMatch> out;
    for (const auto& target : concept_set.concepts) {
        double best = -2.0;
        const std::string* best_phrase = nullptr;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (!embedded[i]) continue;
            double sim = cosine(*embedded[i], target.vector);
            if (sim > best) { // strict: ties keep the earliest candidate
                best = sim;
                best_phrase = &candidates[i];
            }
        }
        if (best_phrase && best >= cfg.threshold) {
            out.push_back({tweet.id, target.name, best, *best_phrase,
                           tweet_local_date});
        }
    }
    std::sort(out.begin(), out.end(), [](const ConceptMatch& a, const ConceptMatch& b) {
        return a.concept_name < b.concept_name;
    });
    return out;
}

ConceptCloud concept_cloud(const std::vector<ConceptMatch>& matches,
                           Date from, Date to) {
    if (from > to) throw DataError("InvalidRange: " + from.iso() + " > " + to.iso());
    ConceptCloud cloud;
    cloud.from = from;
    cloud.to = to;
    for (const auto& m : matches) {
        if (m.local_date < from || m.local_date > to) continue;
        ++cloud.counts[m.concept_name];
    }
    return cloud;
}

std::string matches_to_csv(const std::vector<ConceptMatch>& matches) {
    std::ostringstream os;
    os << "tweet_id,local_date,concept,similarity,matched_phrase\n";
    char buf[32];
    for (const auto& m : matches) {
        std::snprintf(buf, sizeof(buf), "%.6f", m.similarity);
        os << m.tweet_id << ',' << m.local_date.iso() << ',' << m.concept_name
           << ',' << buf << ',' << m.matched_phrase << '\n';
    }
    return os.str();
}

std::vector<ConceptMatch> parse_matches_csv(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty() || lines[0] != "tweet_id,local_date,concept,similarity,matched_phrase")
        throw DataError("MalformedRow: bad matches header");
    std::vector<ConceptMatch> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        std::vector<std::string_view> f;
        std::size_t pos = 0;
        for (int k = 0; k < 4; ++k) {
            std::size_t c = line.find(',', pos);
            if (c == std::string_view::npos)
                throw DataError("MalformedRow: line " + std::to_string(i + 1));
            f.push_back(line.substr(pos, c - pos));
            pos = c + 1;
        }
        f.push_back(line.substr(pos)); // phrase may contain no commas by construction
        ConceptMatch m;
        m.tweet_id = std::string(f[0]);
        m.local_date = parse_date(f[1]);
        m.concept_name = std::string(f[2]);
        if (!parse_double(f[3], m.similarity))
            throw DataError("MalformedRow: line " + std::to_string(i + 1));
        m.matched_phrase = std::string(f[4]);
        out.push_back(std::move(m));
    }
    return out;
}

std::string cloud_to_csv(const ConceptCloud& cloud) {
    std::vector<std::pair<std::string, std::int64_t>> rows(cloud.counts.begin(),
                                                           cloud.counts.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::ostringstream os;
    os << "concept,count\n";
    for (const auto& [name, count] : rows) os << name << ',' << count << '\n';
    return os.str();
}

} // namespace episense::concepts
