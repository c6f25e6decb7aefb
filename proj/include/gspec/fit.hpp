#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gspec {

struct PowerFit {
    double exponent;
    double constant;  // y ~ constant * x^exponent
    double r2;
    int n;
};

/// Least-squares fit of log y against log x. Pairs with y <= 0 or
/// x <= 0 are skipped; throws if fewer than two remain.
inline PowerFit fit_power(const std::vector<double>& xs,
                          const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_power: size mismatch");
    std::vector<double> lx, ly;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] > 0.0 && ys[i] > 0.0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        }
    }
    const int n = static_cast<int>(lx.size());
    if (n < 2) throw std::invalid_argument("fit_power: need at least two positive pairs");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
        syy += ly[i] * ly[i];
    }
    const double det = n * sxx - sx * sx;
    if (det <= 0.0) throw std::invalid_argument("fit_power: degenerate abscissae");
    const double slope = (n * sxy - sx * sy) / det;
    const double icpt = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ymean = sy / n;
    for (int i = 0; i < n; ++i) {
        const double pred = icpt + slope * lx[i];
        ss_res += (ly[i] - pred) * (ly[i] - pred);
        ss_tot += (ly[i] - ymean) * (ly[i] - ymean);
    }
    const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return PowerFit{slope, std::exp(icpt), r2, n};
}

}  // namespace gspec
