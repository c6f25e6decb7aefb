#include "gspec/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace gspec {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b"};

std::string f2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string f3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

}  // namespace

void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<PlotSeries>& series,
                      const std::vector<PlotFitLine>& fits) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = 0.0;
    double ymin = std::numeric_limits<double>::infinity(), ymax = 0.0;
    int usable = 0;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points)
            if (x > 0.0 && y > 0.0) {
                ++usable;
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
    if (usable < 2)
        throw std::invalid_argument("write_loglog_svg: need at least two positive points");
    if (xmax == xmin) xmax = xmin * 2.0;
    if (ymax == ymin) ymax = ymin * 2.0;
    const double lx0 = std::log10(xmin), lx1 = std::log10(xmax);
    const double ly0 = std::log10(ymin), ly1 = std::log10(ymax);
    auto px = [&](double x) {
        return kMarginL + (std::log10(x) - lx0) / (lx1 - lx0) *
                              (kWidth - kMarginL - kMarginR);
    };
    auto py = [&](double y) {
        return kHeight - kMarginB -
               (std::log10(y) - ly0) / (ly1 - ly0) * (kHeight - kMarginT - kMarginB);
    };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"monospace\" font-size=\"15\">" << title << "</text>\n";
    // Axes.
    out << "<line x1=\"" << kMarginL << "\" y1=\"" << kHeight - kMarginB << "\" x2=\""
        << kWidth - kMarginR << "\" y2=\"" << kHeight - kMarginB
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMarginL << "\" y1=\"" << kMarginT << "\" x2=\"" << kMarginL
        << "\" y2=\"" << kHeight - kMarginB << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (kMarginL + kWidth - kMarginR) / 2 << "\" y=\""
        << kHeight - 12 << "\" text-anchor=\"middle\" font-family=\"monospace\" "
        << "font-size=\"12\">" << xlabel << "</text>\n";
    out << "<text x=\"16\" y=\"" << (kMarginT + kHeight - kMarginB) / 2
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << (kMarginT + kHeight - kMarginB) / 2
        << ")\">" << ylabel << "</text>\n";
    // Decade tick labels.
    for (int d = (int)std::ceil(lx0); d <= (int)std::floor(lx1); ++d) {
        const double x = std::pow(10.0, d);
        out << "<line x1=\"" << f2(px(x)) << "\" y1=\"" << kHeight - kMarginB
            << "\" x2=\"" << f2(px(x)) << "\" y2=\"" << kHeight - kMarginB + 5
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << f2(px(x)) << "\" y=\"" << kHeight - kMarginB + 18
            << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">1e"
            << d << "</text>\n";
    }
    for (int d = (int)std::ceil(ly0); d <= (int)std::floor(ly1); ++d) {
        const double y = std::pow(10.0, d);
        out << "<line x1=\"" << kMarginL - 5 << "\" y1=\"" << f2(py(y)) << "\" x2=\""
            << kMarginL << "\" y2=\"" << f2(py(y)) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kMarginL - 8 << "\" y=\"" << f2(py(y) + 4)
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">1e"
            << d << "</text>\n";
    }
    // Fitted lines across the x-range.
    for (size_t i = 0; i < fits.size(); ++i) {
        const auto& f = fits[i];
        const double y0 = f.constant * std::pow(xmin, f.exponent);
        const double y1 = f.constant * std::pow(xmax, f.exponent);
        if (y0 <= 0.0 || y1 <= 0.0) continue;
        const double cy0 = std::clamp(py(y0), (double)kMarginT, (double)(kHeight - kMarginB));
        const double cy1 = std::clamp(py(y1), (double)kMarginT, (double)(kHeight - kMarginB));
        const char* col = kColors[(series.size() + i) % 6];
        out << "<line x1=\"" << f2(px(xmin)) << "\" y1=\"" << f2(cy0) << "\" x2=\""
            << f2(px(xmax)) << "\" y2=\"" << f2(cy1) << "\" stroke=\"" << col
            << "\" stroke-dasharray=\"6 3\"/>\n";
        out << "<text x=\"" << kWidth - kMarginR - 4 << "\" y=\""
            << kMarginT + 16 + 14 * (int)(series.size() + i)
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\" fill=\""
            << col << "\">" << f.label << " slope=" << f3(f.exponent) << "</text>\n";
    }
    // Scatter markers.
    for (size_t si = 0; si < series.size(); ++si) {
        const char* col = kColors[si % 6];
        for (const auto& [x, y] : series[si].points) {
            if (x <= 0.0 || y <= 0.0) continue;
            out << "<circle cx=\"" << f2(px(x)) << "\" cy=\"" << f2(py(y))
                << "\" r=\"3\" fill=\"" << col << "\"/>\n";
        }
        out << "<text x=\"" << kWidth - kMarginR - 4 << "\" y=\""
            << kMarginT + 16 + 14 * (int)si
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\" fill=\""
            << col << "\">" << series[si].label << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace gspec
