#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gspec {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Optional fitted power law drawn as a straight line in log-log axes.
struct PlotFitLine {
    std::string label;
    double exponent;
    double constant;  // y = constant * x^exponent
};

/// Deterministic log-log scatter plot: fixed canvas, fixed decimal
/// formatting, byte-stable output. Throws if fewer than two positive
/// points are available in total.
void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<PlotSeries>& series,
                      const std::vector<PlotFitLine>& fits = {});

}  // namespace gspec
