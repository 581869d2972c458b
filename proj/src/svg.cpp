#include "episense/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace episense::svg {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 420;
constexpr int kMarginLeft = 60;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

void polyline(std::ostringstream& os, const series::DailySeries& s, Date x0,
              Date x1, double ymin, double ymax, const char* color) {
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const double span_x = std::max<std::int64_t>(1, x1 - x0);
    const double span_y = ymax > ymin ? ymax - ymin : 1.0;
    os << "  <polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.size(); ++i) {
        Date d = s.start_date + static_cast<std::int64_t>(i);
        if (d < x0 || d > x1) continue;
        double px = kMarginLeft + plot_w * (d - x0) / span_x;
        double py = kMarginTop + plot_h * (1.0 - (s.values[i] - ymin) / span_y);
        os << fmt(px) << ',' << fmt(py) << ' ';
    }
    os << "\"/>\n";
}

} // namespace

std::string line_chart(const series::DailySeries& a, const series::DailySeries& b,
                       const std::string& label_a, const std::string& label_b,
                       const std::string& title, std::optional<Date> marker) {
    Date x0 = std::min(a.start_date, b.start_date);
    Date x1 = std::max(a.end_date(), b.end_date());
    double ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const auto* s : {&a, &b}) {
        for (double v : s->values) {
            if (first) {
                ymin = ymax = v;
                first = false;
            }
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (ymin > 0.0) ymin = 0.0;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
       << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
       << kHeight << "\">\n";
    os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "  <text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // axes
    os << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << kHeight - kMarginBottom
       << "\" x2=\"" << kWidth - kMarginRight << "\" y2=\""
       << kHeight - kMarginBottom << "\" stroke=\"black\"/>\n";
    os << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop
       << "\" x2=\"" << kMarginLeft << "\" y2=\"" << kHeight - kMarginBottom
       << "\" stroke=\"black\"/>\n";
    os << "  <text x=\"" << kMarginLeft << "\" y=\"" << kHeight - 12
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << x0.iso()
       << "</text>\n";
    os << "  <text x=\"" << kWidth - kMarginRight
       << "\" y=\"" << kHeight - 12
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << x1.iso() << "</text>\n";
    os << "  <text x=\"8\" y=\"" << kMarginTop + 10
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(ymax)
       << "</text>\n";
    os << "  <text x=\"8\" y=\"" << kHeight - kMarginBottom
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(ymin)
       << "</text>\n";

    polyline(os, a, x0, x1, ymin, ymax, "#1f77b4");
    polyline(os, b, x0, x1, ymin, ymax, "#d62728");

    // legend
    os << "  <text x=\"" << kWidth - kMarginRight - 160 << "\" y=\""
       << kMarginTop + 14 << "\" font-family=\"sans-serif\" font-size=\"12\" "
          "fill=\"#1f77b4\">" << label_a << "</text>\n";
    os << "  <text x=\"" << kWidth - kMarginRight - 160 << "\" y=\""
       << kMarginTop + 30 << "\" font-family=\"sans-serif\" font-size=\"12\" "
          "fill=\"#d62728\">" << label_b << "</text>\n";

    if (marker && *marker >= x0 && *marker <= x1) {
        const double plot_w = kWidth - kMarginLeft - kMarginRight;
        const double span_x = std::max<std::int64_t>(1, x1 - x0);
        double px = kMarginLeft + plot_w * (*marker - x0) / span_x;
        os << "  <line x1=\"" << fmt(px) << "\" y1=\"" << kMarginTop
           << "\" x2=\"" << fmt(px) << "\" y2=\"" << kHeight - kMarginBottom
           << "\" stroke=\"#2ca02c\" stroke-dasharray=\"4 3\"/>\n";
        os << "  <text x=\"" << fmt(px + 4) << "\" y=\"" << kMarginTop + 48
           << "\" font-family=\"sans-serif\" font-size=\"11\" "
              "fill=\"#2ca02c\">" << marker->iso() << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace episense::svg
