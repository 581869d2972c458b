#ifndef EPISENSE_SYNTH_HPP
#define EPISENSE_SYNTH_HPP

#include "episense/corpus.hpp"
#include "episense/sentiment.hpp"
#include "episense/series.hpp"

#include <cstdint>
#include <utility>

namespace episense::synth {

/// Seedable portable generator (splitmix64). Uniforms are
/// (state_output >> 11) * 2^-53; approximate gaussians are Irwin-Hall
/// (sum of 12 uniforms - 6), so outputs are bit-identical across platforms
/// under IEEE-754 doubles.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    double uniform() { // [0, 1)
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double gaussian(double sd) {
        double s = 0.0;
        for (int i = 0; i < 12; ++i) s += uniform();
        return (s - 6.0) * sd;
    }

private:
    std::uint64_t state_;
};

enum class SentimentProcess { iid_uniform, random_walk };

struct SynthConfig {
    std::uint64_t seed = 1;
    int days = 60; // >= 45 (train 30 + horizon 14 + 1)
    double baseline = 30.0;
    double beta_cases = 0.005;
    double beta_recovered = -0.01;
    double beta_sentiment = 25.0;
    int sentiment_lag = 7; // days before sentiment reaches the case counts
    double noise_sd = 3.0;
    SentimentProcess sentiment_process = SentimentProcess::random_walk;
    Date start_date = Date::from_ymd(2020, 4, 1);
    std::string region_id = "synth";
};

/// Deterministic case + sentiment generator.
/// Recurrence (see README for the documented contract):
///   s(t): iid uniform in [-1,1], or random walk s(t)=clamp(s(t-1)+0.25 u, -1, 1)
///   new(0) = 20, recovered(0) = 0, deaths(t) = round(new(t) / 50)
///   new(t) = max(0, round(baseline + beta_cases*C(t-1) + beta_recovered*R(t-1)
///                         + beta_sentiment*s(t - sentiment_lag) + gaussian(noise_sd)))
///   recovered(t) = round(max(0, level(t))), level(t) = level(t-1) + gaussian(2),
///   level(0) = 10
/// with C, R the cumulative new/recovered sums and s clamped at index 0 while
/// warming up. Matching sentiment_lag to a forecast horizon makes the lagged
/// sentiment feature the true regressor for that horizon; the independent
/// recovery level keeps the cumulative columns well conditioned.
std::pair<corpus::RegionSeries, sentiment::DailySentiment>
generate(const SynthConfig& cfg);

/// Paired curves sharing an early epidemic wave; series A adds a linear ramp
/// after split_day while B keeps following the shared baseline.
std::pair<series::DailySeries, series::DailySeries>
generate_divergence_pair(std::uint64_t seed, int split_day, int days,
                         double ramp_slope_scale = 1.0);

} // namespace episense::synth

#endif
