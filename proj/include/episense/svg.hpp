#ifndef EPISENSE_SVG_HPP
#define EPISENSE_SVG_HPP

#include "episense/series.hpp"

#include <optional>
#include <string>

namespace episense::svg {

/// Minimal two-series line chart with axis labels and an optional vertical
/// divergence marker. Self-contained SVG text, deterministic output.
std::string line_chart(const series::DailySeries& a, const series::DailySeries& b,
                       const std::string& label_a, const std::string& label_b,
                       const std::string& title,
                       std::optional<Date> marker = std::nullopt);

} // namespace episense::svg

#endif
