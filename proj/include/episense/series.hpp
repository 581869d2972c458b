#ifndef EPISENSE_SERIES_HPP
#define EPISENSE_SERIES_HPP

#include "episense/date.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace episense::series {

struct DailySeries {
    Date start_date;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    Date end_date() const { return start_date + static_cast<std::int64_t>(values.size()) - 1; }
};

DailySeries from_counts(Date start, const std::vector<std::int64_t>& counts);

/// Prefix sums; preserves start_date and length.
DailySeries cumulative(const DailySeries& s);

/// Multiplies every value by factor (> 0).
DailySeries scale(const DailySeries& s, double factor);

/// Min-max normalization to [0,1]; a constant series maps to all zeros.
DailySeries normalize_minmax(const DailySeries& s);

struct DivergenceConfig {
    double scale_a = 1.0;
    double scale_b = 1.0;
    bool normalize = true;
    int window_days = 7;
    double threshold = 0.1; // in (0,1)
    int persistence_days = 7;
};

struct DivergenceReport {
    std::optional<Date> divergence_date;
    DailySeries difference_trace; // rolling mean |a'-b'|, one value per window end
    DivergenceConfig config_used;
};

/// Finds the earliest date at which the two (scaled, optionally normalized)
/// curves stop tracking each other: rolling mean absolute difference over
/// window_days stays above threshold for persistence_days, after having been
/// at or below it at least once before.
DivergenceReport divergence_point(const DailySeries& a, const DailySeries& b,
                                  const DivergenceConfig& cfg);

} // namespace episense::series

#endif
