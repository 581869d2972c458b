#include "episense/series.hpp"
#include "episense/errors.hpp"

#include <algorithm>
#include <cmath>

namespace episense::series {

DailySeries from_counts(Date start, const std::vector<std::int64_t>& counts) {
    DailySeries s;
    s.start_date = start;
    s.values.assign(counts.begin(), counts.end());
    return s;
}

DailySeries cumulative(const DailySeries& s) {
    DailySeries out = s;
    double acc = 0.0;
    for (auto& v : out.values) {
        acc += v;
        v = acc;
    }
    return out;
}

DailySeries scale(const DailySeries& s, double factor) {
    if (!(factor > 0.0)) throw ConfigError("NonPositiveFactor");
    DailySeries out = s;
    for (auto& v : out.values) v *= factor;
    return out;
}

DailySeries normalize_minmax(const DailySeries& s) {
    DailySeries out = s;
    if (out.values.empty()) return out;
    auto [mn_it, mx_it] = std::minmax_element(out.values.begin(), out.values.end());
    double mn = *mn_it, mx = *mx_it;
    if (mx == mn) {
        std::fill(out.values.begin(), out.values.end(), 0.0);
    } else {
        for (auto& v : out.values) v = (v - mn) / (mx - mn);
    }
    return out;
}

DivergenceReport divergence_point(const DailySeries& a, const DailySeries& b,
                                  const DivergenceConfig& cfg) {
    const Date start = std::max(a.start_date, b.start_date);
    const Date end = std::min(a.end_date(), b.end_date());
    const std::int64_t len = end - start + 1;
    const int w = cfg.window_days;
    const int p = cfg.persistence_days;
    if (len < w + p)
        throw DataError("InsufficientOverlap: " + std::to_string(len) +
                        " shared days, need " + std::to_string(w + p));

    DailySeries ap, bp;
    ap.start_date = bp.start_date = start;
    ap.values.resize(len);
    bp.values.resize(len);
    for (std::int64_t i = 0; i < len; ++i) {
        ap.values[i] = a.values[(start - a.start_date) + i] * cfg.scale_a;
        bp.values[i] = b.values[(start - b.start_date) + i] * cfg.scale_b;
    }
    if (cfg.normalize) {
        ap = normalize_minmax(ap);
        bp = normalize_minmax(bp);
    }

    // diff[k] = mean |a'-b'| over the window ending at overlap index w-1+k
    DailySeries trace;
    trace.start_date = start + (w - 1);
    double run = 0.0;
    for (int i = 0; i < w; ++i) run += std::abs(ap.values[i] - bp.values[i]);
    trace.values.push_back(run / w);
    for (std::int64_t k = w; k < len; ++k) {
        run += std::abs(ap.values[k] - bp.values[k]);
        run -= std::abs(ap.values[k - w] - bp.values[k - w]);
        trace.values.push_back(run / w);
    }

    DivergenceReport report;
    report.difference_trace = trace;
    report.config_used = cfg;

    const std::int64_t n = static_cast<std::int64_t>(trace.values.size());
    bool seen_quiet = false;
    for (std::int64_t d = 0; d + p <= n; ++d) {
        if (trace.values[d] <= cfg.threshold) {
            seen_quiet = true;
            continue;
        }
        if (!seen_quiet) continue;
        bool sustained = true;
        for (std::int64_t j = d; j < d + p; ++j) {
            if (!(trace.values[j] > cfg.threshold)) {
                sustained = false;
                break;
            }
        }
        if (sustained) {
            report.divergence_date = trace.start_date + d;
            break;
        }
    }
    return report;
}

} // namespace episense::series
