#include "episense/synth.hpp"
#include "episense/errors.hpp"

#include <algorithm>
#include <cmath>

namespace episense::synth {

std::pair<corpus::RegionSeries, sentiment::DailySentiment>
generate(const SynthConfig& cfg) {
    if (cfg.days < 45) throw ConfigError("InvalidConfig: days must be >= 45");
    if (cfg.noise_sd < 0) throw ConfigError("InvalidConfig: negative noise_sd");
    if (cfg.sentiment_lag < 0)
        throw ConfigError("InvalidConfig: negative sentiment_lag");

    Rng rng(cfg.seed);
    const int n = cfg.days;

    std::vector<double> s(n);
    if (cfg.sentiment_process == SentimentProcess::iid_uniform) {
        for (int t = 0; t < n; ++t) s[t] = 2.0 * rng.uniform() - 1.0;
    } else {
        s[0] = 2.0 * rng.uniform() - 1.0;
        for (int t = 1; t < n; ++t) {
            double step = 0.25 * (2.0 * rng.uniform() - 1.0);
            s[t] = std::clamp(s[t - 1] + step, -1.0, 1.0);
        }
    }

    corpus::RegionSeries cases;
    cases.region_id = cfg.region_id;
    cases.start_date = cfg.start_date;
    cases.new_cases.resize(n);
    cases.recovered.resize(n);
    cases.deaths.resize(n);

    // sentiment reaches the case counts after a configurable reporting delay
    const int lag = cfg.sentiment_lag;
    auto lagged_drive = [&s, lag](int t) { return s[std::max(0, t - lag)]; };

    cases.new_cases[0] = 20;
    cases.recovered[0] = 0;
    double cum_new = 20.0, cum_rec = 0.0;
    double rec_level = 10.0;
    for (int t = 1; t < n; ++t) {
        double mean = cfg.baseline + cfg.beta_cases * cum_new +
                      cfg.beta_recovered * cum_rec +
                      cfg.beta_sentiment * lagged_drive(t);
        double value = mean + rng.gaussian(cfg.noise_sd);
        cases.new_cases[t] = static_cast<std::int64_t>(
            std::max(0.0, std::round(value)));
        rec_level = std::max(0.0, rec_level + rng.gaussian(2.0));
        cases.recovered[t] = static_cast<std::int64_t>(std::round(rec_level));
        cum_new += static_cast<double>(cases.new_cases[t]);
        cum_rec += static_cast<double>(cases.recovered[t]);
    }
    for (int t = 0; t < n; ++t)
        cases.deaths[t] = static_cast<std::int64_t>(
            std::round(static_cast<double>(cases.new_cases[t]) / 50.0));

    sentiment::DailySentiment daily;
    daily.start_date = cfg.start_date;
    daily.values = std::move(s);
    daily.coverage.assign(n, 1);
    return {std::move(cases), std::move(daily)};
}

std::pair<series::DailySeries, series::DailySeries>
generate_divergence_pair(std::uint64_t seed, int split_day, int days,
                         double ramp_slope_scale) {
    if (split_day <= 0 || split_day >= days)
        throw ConfigError("InvalidConfig: split_day out of range");
    if (ramp_slope_scale < 0)
        throw ConfigError("InvalidConfig: negative ramp_slope_scale");

    Rng rng(seed);
    const double peak = 100.0;
    const int peak_day = std::max(2, days / 8);

    // shared baseline: triangular early wave plus small shared noise
    std::vector<double> base(days);
    for (int t = 0; t < days; ++t) {
        double wave = peak * std::max(0.0, 1.0 - std::abs(t - peak_day) /
                                                     static_cast<double>(peak_day));
        double noise = std::floor(4.0 * rng.uniform()); // 0..3, shared
        base[t] = std::round(wave) + noise;
    }

    // ramp height capped at the wave peak so both series share their min-max
    // range and normalized baselines stay aligned
    const int tail = days - 1 - split_day;
    const double slope =
        ramp_slope_scale * (tail > 0 ? peak / tail : 0.0);

    series::DailySeries a, b;
    a.start_date = b.start_date = Date::from_ymd(2020, 3, 15);
    a.values = base;
    b.values = std::move(base);
    for (int t = split_day; t < days; ++t)
        a.values[t] += std::round(slope * (t - split_day));
    return {std::move(a), std::move(b)};
}

} // namespace episense::synth
