// episense - sentiment-aware epidemic case analytics pipeline.
//
// Subcommands: diverge, concepts, sentiment, fit, report, explain, synth.
// Exit codes: 0 success, 2 data error, 3 config error.

#include "episense/assets.hpp"
#include "episense/concepts.hpp"
#include "episense/corpus.hpp"
#include "episense/errors.hpp"
#include "episense/explain.hpp"
#include "episense/manifest.hpp"
#include "episense/regress.hpp"
#include "episense/sentiment.hpp"
#include "episense/series.hpp"
#include "episense/svg.hpp"
#include "episense/synth.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <unistd.h>

namespace {

using namespace episense;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("CannotRead: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("CannotWrite: " + path);
    out << content;
}

bool color_enabled() {
    if (std::getenv("EPISENSE_NO_COLOR")) return false;
    return isatty(fileno(stdout));
}

struct ManifestBuilder {
    manifest::RunManifest m;

    explicit ManifestBuilder(std::string command) { m.command = std::move(command); }
    void input(const std::string& path, const std::string& content) {
        m.input_digests[path] = manifest::content_digest(content);
    }
    template <typename T>
    void cfg(const std::string& key, const T& value) {
        std::ostringstream os;
        os << value;
        m.config[key] = os.str();
    }
    void emit(const std::string& output_path, const std::string& content) {
        write_file(output_path, content);
        manifest::write_sidecar(output_path, m);
    }
};

// ---------------------------------------------------------------- diverge

struct DivergeOpts {
    std::string file_a, file_b;
    std::string region_a = "a", region_b = "b";
    series::DivergenceConfig cfg;
    bool no_normalize = false;
    bool zero_fill = false;
    std::string out = "divergence.json";
    std::string svg_out;
};

int run_diverge(const DivergeOpts& o) {
    series::DivergenceConfig cfg = o.cfg;
    cfg.normalize = !o.no_normalize;
    if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0))
        throw ConfigError("InvalidThreshold: must be in (0,1)");
    if (cfg.window_days < 1 || cfg.persistence_days < 1)
        throw ConfigError("InvalidWindow");

    std::string text_a = read_file(o.file_a);
    std::string text_b = read_file(o.file_b);
    auto series_a = corpus::parse_case_csv(text_a, o.region_a, o.zero_fill);
    auto series_b = corpus::parse_case_csv(text_b, o.region_b, o.zero_fill);
    auto a = series::from_counts(series_a.start_date, series_a.new_cases);
    auto b = series::from_counts(series_b.start_date, series_b.new_cases);
    auto report = series::divergence_point(a, b, cfg);

    nlohmann::json j;
    j["region_a"] = o.region_a;
    j["region_b"] = o.region_b;
    j["divergence_date"] =
        report.divergence_date ? nlohmann::json(report.divergence_date->iso())
                               : nlohmann::json(nullptr);
    j["difference_trace"] = {
        {"start_date", report.difference_trace.start_date.iso()},
        {"values", report.difference_trace.values}};
    j["config"] = {{"scale_a", cfg.scale_a},
                   {"scale_b", cfg.scale_b},
                   {"normalize", cfg.normalize},
                   {"window_days", cfg.window_days},
                   {"threshold", cfg.threshold},
                   {"persistence_days", cfg.persistence_days}};

    ManifestBuilder mb("diverge");
    mb.input(o.file_a, text_a);
    mb.input(o.file_b, text_b);
    mb.cfg("scale_a", cfg.scale_a);
    mb.cfg("scale_b", cfg.scale_b);
    mb.cfg("normalize", cfg.normalize);
    mb.cfg("window_days", cfg.window_days);
    mb.cfg("threshold", cfg.threshold);
    mb.cfg("persistence_days", cfg.persistence_days);
    mb.emit(o.out, j.dump(2) + "\n");

    if (!o.svg_out.empty()) {
        auto chart_a = series::scale(a, cfg.scale_a);
        auto chart_b = series::scale(b, cfg.scale_b);
        mb.emit(o.svg_out,
                svg::line_chart(chart_a, chart_b, o.region_a, o.region_b,
                                "Daily new cases", report.divergence_date));
    }
    if (report.divergence_date)
        std::cout << "divergence_date: " << report.divergence_date->iso() << "\n";
    else
        std::cout << "divergence_date: none\n";
    return 0;
}

// --------------------------------------------------------------- concepts

struct ConceptsOpts {
    std::string tweets_file, embeddings_file, concepts_file;
    std::string region;
    int utc_offset = 330;
    std::string from, to;
    concepts::MatcherConfig cfg;
    int workers = 1;
    std::string out = "matches.csv";
    std::string cloud_out;
};

int run_concepts(const ConceptsOpts& o) {
    if (!(o.cfg.threshold > 0.0 && o.cfg.threshold <= 1.0))
        throw ConfigError("InvalidThreshold: must be in (0,1]");
    if (o.workers < 1) throw ConfigError("InvalidWorkers");
    Date from = parse_date(o.from);
    Date to = parse_date(o.to);
    if (from > to) throw ConfigError("InvalidRange");

    std::string tweets_text = read_file(o.tweets_file);
    std::string emb_text = read_file(o.embeddings_file);
    std::string concepts_text = read_file(o.concepts_file);

    auto tweets = corpus::parse_tweets_json(tweets_text);
    auto store = concepts::load_embeddings(emb_text);
    auto concept_set = concepts::load_concepts(concepts_text, store);

    concepts::MatcherConfig cfg = o.cfg;
    if (cfg.stopwords.empty()) cfg.stopwords = concepts::default_stopwords();

    // pick eligible tweets in file order
    struct Job { const corpus::TweetRecord* tweet; Date day; };
    std::vector<Job> jobs;
    for (const auto& t : tweets) {
        if (t.region_id != o.region) continue;
        Date d = local_date(t.timestamp_utc, o.utc_offset);
        if (d < from || d > to) continue;
        jobs.push_back({&t, d});
    }

    // per-job result slots keep the merge in input order regardless of
    // worker count
    std::vector<std::vector<concepts::ConceptMatch>> slots(jobs.size());
    auto work = [&](std::size_t worker) {
        for (std::size_t i = worker; i < jobs.size(); i += o.workers)
            slots[i] = concepts::match_concepts(*jobs[i].tweet, jobs[i].day,
                                                store, concept_set, cfg);
    };
    if (o.workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < o.workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    std::vector<concepts::ConceptMatch> matches;
    for (auto& slot : slots)
        matches.insert(matches.end(), slot.begin(), slot.end());

    ManifestBuilder mb("concepts");
    mb.input(o.tweets_file, tweets_text);
    mb.input(o.embeddings_file, emb_text);
    mb.input(o.concepts_file, concepts_text);
    mb.cfg("region", o.region);
    mb.cfg("utc_offset", o.utc_offset);
    mb.cfg("from", from.iso());
    mb.cfg("to", to.iso());
    mb.cfg("threshold", cfg.threshold);
    mb.cfg("max_ngram", cfg.max_ngram);
    mb.cfg("whole_tweet", cfg.whole_tweet);
    mb.emit(o.out, concepts::matches_to_csv(matches));

    if (!o.cloud_out.empty()) {
        auto cloud = concepts::concept_cloud(matches, from, to);
        mb.emit(o.cloud_out, concepts::cloud_to_csv(cloud));
    }
    std::cout << matches.size() << " matches from " << jobs.size()
              << " eligible tweets\n";
    return 0;
}

// -------------------------------------------------------------- sentiment

struct SentimentOpts {
    std::string matches_file;
    std::string lexicon_file, tweets_file; // lexicon mode
    std::string scores_file;               // precomputed mode
    std::string from, to;
    bool per_tweet = false;
    bool carry_forward = false;
    std::string out = "daily_sentiment.csv";
    std::string scores_out;
};

int run_sentiment(const SentimentOpts& o) {
    Date from = parse_date(o.from);
    Date to = parse_date(o.to);
    if (from > to) throw ConfigError("InvalidRange");
    const bool lexicon_mode = !o.lexicon_file.empty();
    if (lexicon_mode == !o.scores_file.empty())
        throw ConfigError("Specify exactly one of --lexicon or --scores");
    if (lexicon_mode && o.tweets_file.empty())
        throw ConfigError("--lexicon requires --tweets for the texts");

    std::string matches_text = read_file(o.matches_file);
    auto matches = concepts::parse_matches_csv(matches_text);

    ManifestBuilder mb("sentiment");
    mb.input(o.matches_file, matches_text);
    mb.cfg("from", from.iso());
    mb.cfg("to", to.iso());
    mb.cfg("per_tweet", o.per_tweet);
    mb.cfg("carry_forward", o.carry_forward);

    std::map<std::string, double> scores;
    if (lexicon_mode) {
        std::string lex_text = read_file(o.lexicon_file);
        std::string tweets_text = read_file(o.tweets_file);
        auto lex = sentiment::load_lexicon(lex_text);
        auto tweets = corpus::parse_tweets_json(tweets_text);
        for (const auto& t : tweets)
            scores[t.id] = sentiment::score_tweet(lex, t.text);
        mb.input(o.lexicon_file, lex_text);
        mb.input(o.tweets_file, tweets_text);
    } else {
        std::string scores_text = read_file(o.scores_file);
        scores = sentiment::load_precomputed(scores_text);
        mb.input(o.scores_file, scores_text);
    }

    auto daily = sentiment::daily_sentiment(matches, scores, from, to,
                                            o.per_tweet, o.carry_forward);
    mb.emit(o.out, sentiment::to_csv(daily));

    if (!o.scores_out.empty()) {
        std::ostringstream os;
        os << "tweet_id,score\n";
        char buf[32];
        for (const auto& [id, score] : scores) {
            std::snprintf(buf, sizeof(buf), "%.6f", score);
            os << id << ',' << buf << '\n';
        }
        mb.emit(o.scores_out, os.str());
    }
    return 0;
}

// -------------------------------------------------------------------- fit

struct FitOpts {
    std::string cases_file, sentiment_file;
    std::string region = "region";
    std::string train_from = "2020-04-16", train_to = "2020-05-14";
    int horizon = 14;
    bool no_sentiment = false;
    bool no_intercept = false;
    bool cumulative_sentiment = false;
    bool zero_fill = false;
    double alpha = 0.1;
    std::string out = "fit.json";
};

regress::FitConfig make_fit_config(const FitOpts& o) {
    regress::FitConfig cfg;
    cfg.train_from = parse_date(o.train_from);
    cfg.train_to = parse_date(o.train_to);
    if (cfg.train_from > cfg.train_to) throw ConfigError("InvalidRange");
    if (o.horizon < 1) throw ConfigError("InvalidHorizon");
    if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw ConfigError("InvalidAlpha");
    cfg.horizon_days = o.horizon;
    cfg.with_sentiment = !o.no_sentiment;
    cfg.intercept = !o.no_intercept;
    cfg.cumulative_sentiment = o.cumulative_sentiment;
    cfg.alpha = o.alpha;
    return cfg;
}

int run_fit(const FitOpts& o) {
    regress::FitConfig cfg = make_fit_config(o);
    std::string cases_text = read_file(o.cases_file);
    std::string sent_text = read_file(o.sentiment_file);
    auto cases = corpus::parse_case_csv(cases_text, o.region, o.zero_fill);
    auto sent = sentiment::parse_daily_csv(sent_text);

    auto design = regress::build_design(cases, sent, cfg);
    auto fit = regress::ols_fit(design, cfg.intercept, cfg.alpha);

    std::string body = regress::fit_to_json(fit, cfg);
    if (o.horizon != 3 && o.horizon != 7 && o.horizon != 14) {
        nlohmann::json j = nlohmann::json::parse(body);
        j["note"] = "horizon " + std::to_string(o.horizon) +
                    " is outside the reference set {3, 7, 14}";
        body = j.dump(2) + "\n";
    }

    ManifestBuilder mb("fit");
    mb.input(o.cases_file, cases_text);
    mb.input(o.sentiment_file, sent_text);
    mb.cfg("region", o.region);
    mb.cfg("train_from", cfg.train_from.iso());
    mb.cfg("train_to", cfg.train_to.iso());
    mb.cfg("horizon", cfg.horizon_days);
    mb.cfg("with_sentiment", cfg.with_sentiment);
    mb.cfg("intercept", cfg.intercept);
    mb.cfg("alpha", cfg.alpha);
    mb.emit(o.out, body);
    std::cout << "rmse_train=" << fit.rmse_train << " adj_r2=" << fit.adj_r2
              << "\n";
    return 0;
}

// ----------------------------------------------------------------- report

struct ReportOpts {
    FitOpts fit; // shares data/window flags
    std::vector<int> horizons = {14, 7, 3};
    std::string out = "horizon_report.csv";
    std::string table_out;
};

int run_report(const ReportOpts& o) {
    regress::FitConfig cfg = make_fit_config(o.fit);
    for (int h : o.horizons)
        if (h < 1) throw ConfigError("InvalidHorizon");

    std::string cases_text = read_file(o.fit.cases_file);
    std::string sent_text = read_file(o.fit.sentiment_file);
    auto cases = corpus::parse_case_csv(cases_text, o.fit.region, o.fit.zero_fill);
    auto sent = sentiment::parse_daily_csv(sent_text);

    auto report = regress::evaluate_horizons(cases, sent, cfg, o.horizons);

    ManifestBuilder mb("report");
    mb.input(o.fit.cases_file, cases_text);
    mb.input(o.fit.sentiment_file, sent_text);
    mb.cfg("region", o.fit.region);
    mb.cfg("train_from", cfg.train_from.iso());
    mb.cfg("train_to", cfg.train_to.iso());
    mb.emit(o.out, regress::horizon_csv(report));
    if (!o.table_out.empty())
        mb.emit(o.table_out, regress::render_horizon_table(report, false));

    std::cout << regress::render_horizon_table(report, color_enabled());
    return 0;
}

// ---------------------------------------------------------------- explain

struct ExplainOpts {
    std::string matches_file, scores_file, fit_file;
    std::string graph_file; // empty -> bundled asset
    std::string from, to;
    int top_k = 5;
    int max_depth = 3;
    std::string out = "explanations.json";
    std::string dot_out;
};

int run_explain(const ExplainOpts& o) {
    if (o.top_k < 1) throw ConfigError("InvalidK");
    if (o.max_depth < 1) throw ConfigError("InvalidDepth");
    Date from = parse_date(o.from);
    Date to = parse_date(o.to);
    if (from > to) throw ConfigError("InvalidRange");

    std::string matches_text = read_file(o.matches_file);
    std::string scores_text = read_file(o.scores_file);
    std::string fit_text = read_file(o.fit_file);
    std::string graph_text = o.graph_file.empty() ? assets::helbing_sars_json()
                                                  : read_file(o.graph_file);

    auto matches = concepts::parse_matches_csv(matches_text);
    auto scores = sentiment::load_precomputed(scores_text);
    auto graph = explain::load_graph(graph_text);

    nlohmann::json fit_json = nlohmann::json::parse(fit_text, nullptr, false);
    if (fit_json.is_discarded() || !fit_json.contains("coefficients"))
        throw DataError("MalformedFit: " + o.fit_file);
    regress::FitResult fit;
    for (const auto& [name, value] : fit_json["coefficients"].items())
        fit.coefficients[name] = value.get<double>();

    auto cloud = concepts::concept_cloud(matches, from, to);
    auto explanations = explain::explain_top_concepts(cloud, matches, scores,
                                                      fit, graph, o.top_k,
                                                      o.max_depth);

    ManifestBuilder mb("explain");
    mb.input(o.matches_file, matches_text);
    mb.input(o.scores_file, scores_text);
    mb.input(o.fit_file, fit_text);
    if (!o.graph_file.empty()) mb.input(o.graph_file, graph_text);
    mb.cfg("from", from.iso());
    mb.cfg("to", to.iso());
    mb.cfg("top_k", o.top_k);
    mb.cfg("max_depth", o.max_depth);
    mb.emit(o.out, explain::explanations_to_json(explanations));
    if (!o.dot_out.empty())
        mb.emit(o.dot_out, explain::trigger_subgraph_dot(graph, explanations));
    return 0;
}

// ------------------------------------------------------------------ synth

struct SynthOpts {
    synth::SynthConfig cfg;
    std::string process = "random_walk";
    std::string start_date = "2020-04-01";
    std::string out_cases = "synth_cases.csv";
    std::string out_sentiment = "synth_sentiment.csv";
    // divergence-pair mode
    bool pair = false;
    int split_day = 30;
    double ramp_scale = 1.0;
    std::string out_a = "synth_a.csv";
    std::string out_b = "synth_b.csv";
};

int run_synth(const SynthOpts& o) {
    ManifestBuilder mb("synth");
    mb.cfg("seed", o.cfg.seed);
    mb.cfg("days", o.cfg.days);

    if (o.pair) {
        if (o.split_day <= 0 || o.split_day >= o.cfg.days)
            throw ConfigError("InvalidConfig: split_day out of range");
        auto [a, b] = synth::generate_divergence_pair(o.cfg.seed, o.split_day,
                                                     o.cfg.days, o.ramp_scale);
        auto to_case_csv = [](const series::DailySeries& s) {
            corpus::RegionSeries rs;
            rs.start_date = s.start_date;
            for (double v : s.values) {
                rs.new_cases.push_back(static_cast<std::int64_t>(v));
                rs.recovered.push_back(0);
                rs.deaths.push_back(0);
            }
            return corpus::to_csv(rs);
        };
        mb.cfg("split_day", o.split_day);
        mb.cfg("ramp_scale", o.ramp_scale);
        mb.emit(o.out_a, to_case_csv(a));
        mb.emit(o.out_b, to_case_csv(b));
        return 0;
    }

    synth::SynthConfig cfg = o.cfg;
    cfg.start_date = parse_date(o.start_date);
    if (o.process == "iid_uniform")
        cfg.sentiment_process = synth::SentimentProcess::iid_uniform;
    else if (o.process == "random_walk")
        cfg.sentiment_process = synth::SentimentProcess::random_walk;
    else
        throw ConfigError("InvalidConfig: unknown sentiment process '" +
                          o.process + "'");
    auto [cases, daily] = synth::generate(cfg);

    // PRNG contract documented in the emitted header comment line is not
    // possible in strict CSV; record it in the manifest instead.
    mb.cfg("prng", "splitmix64; uniforms (u64>>11)*2^-53; gaussian Irwin-Hall(12)");
    mb.cfg("baseline", cfg.baseline);
    mb.cfg("beta_cases", cfg.beta_cases);
    mb.cfg("beta_recovered", cfg.beta_recovered);
    mb.cfg("beta_sentiment", cfg.beta_sentiment);
    mb.cfg("sentiment_lag", cfg.sentiment_lag);
    mb.cfg("noise_sd", cfg.noise_sd);
    mb.cfg("process", o.process);
    mb.emit(o.out_cases, corpus::to_csv(cases));
    mb.emit(o.out_sentiment, sentiment::to_csv(daily));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sentiment-aware epidemic case analytics"};
    app.require_subcommand(1);
    app.set_config("--config");
    app.failure_message(CLI::FailureMessage::help);

    DivergeOpts diverge;
    auto* sub_diverge = app.add_subcommand(
        "diverge", "detect the divergence point of two regional case curves");
    sub_diverge->add_option("--a", diverge.file_a, "case CSV for region A")->required();
    sub_diverge->add_option("--b", diverge.file_b, "case CSV for region B")->required();
    sub_diverge->add_option("--region-a", diverge.region_a, "label for region A");
    sub_diverge->add_option("--region-b", diverge.region_b, "label for region B");
    sub_diverge->add_option("--scale-a", diverge.cfg.scale_a, "scale factor for A");
    sub_diverge->add_option("--scale-b", diverge.cfg.scale_b, "scale factor for B");
    sub_diverge->add_flag("--no-normalize", diverge.no_normalize,
                          "skip min-max normalization");
    sub_diverge->add_option("--window", diverge.cfg.window_days, "rolling window days");
    sub_diverge->add_option("--threshold", diverge.cfg.threshold,
                            "divergence threshold in (0,1)");
    sub_diverge->add_option("--persistence", diverge.cfg.persistence_days,
                            "days the difference must persist");
    sub_diverge->add_flag("--zero-fill", diverge.zero_fill,
                          "zero-fill interior date gaps instead of failing");
    sub_diverge->add_option("--out", diverge.out, "report JSON path");
    sub_diverge->add_option("--svg", diverge.svg_out, "also draw an SVG chart");

    ConceptsOpts conc;
    auto* sub_concepts = app.add_subcommand(
        "concepts", "match tweets to causal-network concepts");
    sub_concepts->add_option("--tweets", conc.tweets_file, "tweets NDJSON")->required();
    sub_concepts->add_option("--embeddings", conc.embeddings_file, "embedding table")->required();
    sub_concepts->add_option("--concepts", conc.concepts_file, "concept list")->required();
    sub_concepts->add_option("--region", conc.region, "region id filter")->required();
    sub_concepts->add_option("--utc-offset", conc.utc_offset,
                             "minutes added to UTC for local dates");
    sub_concepts->add_option("--from", conc.from, "first local date")->required();
    sub_concepts->add_option("--to", conc.to, "last local date")->required();
    sub_concepts->add_option("--threshold", conc.cfg.threshold,
                             "cosine similarity threshold (inclusive)");
    sub_concepts->add_option("--max-ngram", conc.cfg.max_ngram, "phrase length cap");
    sub_concepts->add_flag("--whole-tweet", conc.cfg.whole_tweet,
                           "single mean-of-tokens candidate per tweet");
    sub_concepts->add_option("--workers", conc.workers, "worker threads");
    sub_concepts->add_option("--out", conc.out, "matches CSV path");
    sub_concepts->add_option("--cloud", conc.cloud_out, "also write concept cloud CSV");

    SentimentOpts senti;
    auto* sub_sentiment = app.add_subcommand(
        "sentiment", "aggregate matched-tweet sentiment into daily values");
    sub_sentiment->add_option("--matches", senti.matches_file, "matches CSV")->required();
    sub_sentiment->add_option("--lexicon", senti.lexicon_file, "lexicon file");
    sub_sentiment->add_option("--tweets", senti.tweets_file,
                              "tweets NDJSON (for lexicon scoring)");
    sub_sentiment->add_option("--scores", senti.scores_file,
                              "precomputed tweet_id,score CSV");
    sub_sentiment->add_option("--from", senti.from, "first date")->required();
    sub_sentiment->add_option("--to", senti.to, "last date")->required();
    sub_sentiment->add_flag("--per-tweet", senti.per_tweet,
                            "count each tweet once per day");
    sub_sentiment->add_flag("--carry-forward", senti.carry_forward,
                            "carry the last value over empty days");
    sub_sentiment->add_option("--out", senti.out, "daily sentiment CSV path");
    sub_sentiment->add_option("--out-scores", senti.scores_out,
                              "also write per-tweet scores CSV");

    FitOpts fit;
    auto* sub_fit = app.add_subcommand("fit", "fit one OLS forecasting model");
    auto add_fit_flags = [](CLI::App* sub, FitOpts& f) {
        sub->add_option("--cases", f.cases_file, "case CSV")->required();
        sub->add_option("--sentiment", f.sentiment_file, "daily sentiment CSV")->required();
        sub->add_option("--region", f.region, "region label");
        sub->add_option("--train-from", f.train_from, "train window start");
        sub->add_option("--train-to", f.train_to, "train window end");
        sub->add_flag("--no-intercept", f.no_intercept, "fit without intercept");
        sub->add_flag("--cumulative-sentiment", f.cumulative_sentiment,
                      "accumulate the sentiment feature");
        sub->add_flag("--zero-fill", f.zero_fill, "zero-fill case CSV gaps");
        sub->add_option("--alpha", f.alpha, "one-tailed significance level");
    };
    add_fit_flags(sub_fit, fit);
    sub_fit->add_option("--horizon", fit.horizon, "days ahead to predict");
    sub_fit->add_flag("--no-sentiment", fit.no_sentiment,
                      "drop the sentiment feature");
    sub_fit->add_option("--out", fit.out, "fit JSON path");

    ReportOpts report;
    auto* sub_report = app.add_subcommand(
        "report", "with/without-sentiment RMSE and adjusted R2 per horizon");
    add_fit_flags(sub_report, report.fit);
    sub_report->add_option("--horizons", report.horizons,
                           "horizons in output order");
    sub_report->add_option("--out", report.out, "report CSV path");
    sub_report->add_option("--table", report.table_out,
                           "also write the rendered text table");

    ExplainOpts expl;
    auto* sub_explain = app.add_subcommand(
        "explain", "trigger explanations for influential concepts");
    sub_explain->add_option("--matches", expl.matches_file, "matches CSV")->required();
    sub_explain->add_option("--scores", expl.scores_file, "tweet_id,score CSV")->required();
    sub_explain->add_option("--fit", expl.fit_file, "with-sentiment fit JSON")->required();
    sub_explain->add_option("--graph", expl.graph_file,
                            "causal graph JSON (default: bundled network)");
    sub_explain->add_option("--from", expl.from, "first date")->required();
    sub_explain->add_option("--to", expl.to, "last date")->required();
    sub_explain->add_option("-k,--top-k", expl.top_k, "concepts to explain");
    sub_explain->add_option("--max-depth", expl.max_depth, "trigger search depth");
    sub_explain->add_option("--out", expl.out, "explanations JSON path");
    sub_explain->add_option("--dot", expl.dot_out,
                            "also write the trigger subgraph as DOT");

    SynthOpts syn;
    auto* sub_synth = app.add_subcommand(
        "synth", "deterministic synthetic cases and sentiment");
    sub_synth->add_option("--seed", syn.cfg.seed, "PRNG seed");
    sub_synth->add_option("--days", syn.cfg.days, "days to generate");
    sub_synth->add_option("--beta-cases", syn.cfg.beta_cases, "cumulative-cases weight");
    sub_synth->add_option("--beta-recovered", syn.cfg.beta_recovered,
                          "cumulative-recovered weight");
    sub_synth->add_option("--beta-sentiment", syn.cfg.beta_sentiment,
                          "sentiment weight");
    sub_synth->add_option("--baseline", syn.cfg.baseline, "baseline case rate");
    sub_synth->add_option("--sentiment-lag", syn.cfg.sentiment_lag,
                          "days before sentiment reaches the counts");
    sub_synth->add_option("--noise-sd", syn.cfg.noise_sd, "noise magnitude");
    sub_synth->add_option("--process", syn.process,
                          "sentiment process: iid_uniform or random_walk");
    sub_synth->add_option("--start-date", syn.start_date, "first date");
    sub_synth->add_option("--region", syn.cfg.region_id, "region id");
    sub_synth->add_option("--out-cases", syn.out_cases, "case CSV path");
    sub_synth->add_option("--out-sentiment", syn.out_sentiment,
                          "daily sentiment CSV path");
    sub_synth->add_flag("--pair", syn.pair, "emit a divergence pair instead");
    sub_synth->add_option("--split-day", syn.split_day, "pair mode: ramp start");
    sub_synth->add_option("--ramp-scale", syn.ramp_scale, "pair mode: ramp steepness");
    sub_synth->add_option("--out-a", syn.out_a, "pair mode: series A CSV");
    sub_synth->add_option("--out-b", syn.out_b, "pair mode: series B CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (*sub_diverge) return run_diverge(diverge);
        if (*sub_concepts) return run_concepts(conc);
        if (*sub_sentiment) return run_sentiment(senti);
        if (*sub_fit) return run_fit(fit);
        if (*sub_report) return run_report(report);
        if (*sub_explain) return run_explain(expl);
        if (*sub_synth) return run_synth(syn);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
