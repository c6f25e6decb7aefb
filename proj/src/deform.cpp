#include "gspec/deform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gspec/tfcore.hpp"

namespace gspec {

double gamma_exponent(double s) {
    if (!(s > 0.0)) throw std::invalid_argument("gamma_exponent: s must be positive");
    if (s < 1.0) return s / (2.0 * (4.0 - 3.0 * s));
    if (s <= 2.0) return s / 2.0;
    return 1.0;
}

namespace {

bool has_unit_alpha(const std::vector<double>& alphas) {
    for (double a : alphas)
        if (std::abs(a - 1.0) < 1e-12) return true;
    return false;
}

int infinite_lattice_rel(double alpha) {
    // rel of the full lattice alpha Z^2, computed on a patch wide enough
    // that some unit square sits entirely inside it.
    const double half = std::max(3.0, 3.0 * alpha);
    return rel_separation(lattice_patch(alpha, PhaseSpaceBox{half, half}));
}

}  // namespace

SweepResult sweep(const SweepConfig& cfg) {
    if (cfg.alphas.size() < 2) throw std::invalid_argument("sweep: need >= 2 alphas");
    if (!has_unit_alpha(cfg.alphas))
        throw std::invalid_argument("sweep: alpha list must contain 1");
    if (cfg.window.grid.L != cfg.grid.L)
        throw std::invalid_argument("sweep: window grid mismatch");
    SweepResult out;
    double min_used = std::numeric_limits<double>::infinity();
    if (cfg.method == SweepMethod::dense) {
        const PhaseSpaceBox box = PhaseSpaceBox::natural(cfg.grid);
        if (std::abs(box.half_x - box.half_w) > 1e-12)
            throw std::invalid_argument("sweep: dense method needs a square box (L dt^2 = 1)");
        const double span = 2.0 * box.half_x;
        for (double alpha : cfg.alphas) {
            // Snap the lattice spacing so the patch tiles the periodic box.
            const int K = std::max(2, (int)std::lround(span / alpha));
            const double used = span / K;
            const AtomSet atoms = lattice_patch(used, box);
            const FrameBounds fb = frame_bounds(cfg.window, atoms, cfg.grid);
            out.rows.push_back(SweepRow{alpha, used, fb.A, fb.B, fb.method, cfg.grid.L});
            min_used = std::min(min_used, used);
        }
    } else {
        for (double alpha : cfg.alphas) {
            const auto [p, q] = snap_rational(alpha, cfg.zak_qmax);
            const double used = static_cast<double>(p) / q;
            const FrameBounds fb =
                zak_lattice_bounds(cfg.window, p, q, cfg.zak_res);
            out.rows.push_back(SweepRow{alpha, used, fb.A, fb.B, fb.method, cfg.grid.L});
            min_used = std::min(min_used, used);
        }
    }
    out.rel = infinite_lattice_rel(std::min(min_used, 1.0));
    return out;
}

namespace {

const SweepRow& baseline_row(const SweepResult& res) {
    const SweepRow* best = nullptr;
    for (const auto& r : res.rows)
        if (!best || std::abs(r.alpha - 1.0) < std::abs(best->alpha - 1.0)) best = &r;
    if (!best || std::abs(best->alpha - 1.0) > 1e-12)
        throw std::invalid_argument("sweep result lacks an alpha = 1 row");
    return *best;
}

}  // namespace

HolderFit holder_fit(const SweepResult& res, double fit_lo, double fit_hi) {
    const SweepRow& base = baseline_row(res);
    std::vector<double> xs, das, dbs;
    for (const auto& r : res.rows) {
        const double x = std::abs(1.0 - r.alpha_used);
        if (x < fit_lo || x > fit_hi) continue;
        xs.push_back(x);
        das.push_back(std::abs(r.A - base.A));
        dbs.push_back(std::abs(r.B - base.B));
    }
    if (xs.size() < 4)
        throw std::invalid_argument("holder_fit: need >= 4 rows inside the fit window");
    const PowerFit fa = fit_power(xs, das);
    const PowerFit fb = fit_power(xs, dbs);
    return HolderFit{fa.exponent, fb.exponent, fa.constant,
                     std::min(fa.r2, fb.r2), fit_lo, fit_hi,
                     static_cast<int>(xs.size())};
}

BoundCheckReport bound_check(const SweepResult& res, double s,
                             double window_norm_sq, double exponent_override,
                             double fit_lo, double fit_hi) {
    if (!(window_norm_sq > 0.0))
        throw std::invalid_argument("bound_check: window norm must be positive");
    const SweepRow& base = baseline_row(res);
    const double exp_used =
        exponent_override > 0.0 ? exponent_override : gamma_exponent(s);
    double bmax = 0.0;
    for (const auto& r : res.rows) bmax = std::max(bmax, r.B);
    const double floor = 1e-12 * std::max(1.0, bmax);
    std::vector<double> ratios;
    int n_rows = 0;
    for (const auto& r : res.rows) {
        const double x = std::abs(1.0 - r.alpha_used);
        if (x < fit_lo || x > fit_hi) continue;
        ++n_rows;
        const double num = std::max(std::abs(r.A - base.A), std::abs(r.B - base.B));
        if (num <= floor) continue;
        ratios.push_back(num / (res.rel * std::pow(x, exp_used) * window_norm_sq));
    }
    BoundCheckReport rep{};
    rep.exponent_used = exp_used;
    rep.rel = res.rel;
    rep.window_norm_sq = window_norm_sq;
    rep.n_rows = n_rows;
    if (ratios.size() < 2) {
        rep.trivial = true;
        rep.pass = true;
        return rep;
    }
    std::sort(ratios.begin(), ratios.end());
    rep.ratio_max = ratios.back();
    rep.ratio_min = ratios.front();
    rep.ratio_median = ratios.size() % 2 == 1
                           ? ratios[ratios.size() / 2]
                           : 0.5 * (ratios[ratios.size() / 2 - 1] +
                                    ratios[ratios.size() / 2]);
    rep.spread = rep.ratio_max / rep.ratio_median;
    rep.pass = rep.spread <= 5.0;
    return rep;
}

SaturationReport saturation_experiment(const GridSpec& grid,
                                       const std::vector<int>& res_levels) {
    if (res_levels.size() < 2)
        throw std::invalid_argument("saturation_experiment: need >= 2 levels");
    std::vector<int> levels = res_levels;
    std::sort(levels.begin(), levels.end());
    const SampledSignal phi = make_window(WindowSpec::gaussian(), grid);
    static const std::vector<std::pair<int, int>> kAlphas = {
        {6, 7}, {7, 8}, {8, 9}, {9, 10}, {11, 12}, {14, 15}, {1, 1}, {21, 20}};
    SaturationReport rep{};
    std::vector<double> last_left_a, last_left_x;
    for (int res : levels) {
        std::vector<double> xs, as;
        double right_max = 0.0, b_ref = 0.0;
        std::vector<double> left_alpha, left_a;
        for (const auto& [p, q] : kAlphas) {
            const double alpha = static_cast<double>(p) / q;
            const FrameBounds fb = zak_lattice_bounds(phi, p, q, res);
            if (alpha < 1.0) {
                xs.push_back(1.0 - alpha);
                as.push_back(fb.A);
                left_alpha.push_back(alpha);
                left_a.push_back(fb.A);
            } else {
                right_max = std::max(right_max, fb.A);
                if (p == 1 && q == 1) b_ref = fb.B;
            }
        }
        const PowerFit f = fit_power(xs, as);
        rep.levels.push_back(SaturationLevel{res, f.exponent, f.r2, right_max, b_ref});
        last_left_a = left_a;
        last_left_x = left_alpha;
    }
    // Linear slope dA/dalpha on the left branch at the finest level.
    {
        const int n = static_cast<int>(last_left_a.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < n; ++i) {
            sx += last_left_x[i];
            sy += last_left_a[i];
            sxx += last_left_x[i] * last_left_x[i];
            sxy += last_left_x[i] * last_left_a[i];
        }
        rep.left_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    const SaturationLevel& fine = rep.levels.back();
    const SaturationLevel& prev = rep.levels[rep.levels.size() - 2];
    rep.exponent_in_band = fine.exponent_A >= 0.85 && fine.exponent_A <= 1.15;
    rep.exponent_stable = std::abs(fine.exponent_A - prev.exponent_A) <= 0.05;
    rep.right_side_flat = fine.right_max_A <= 1e-3 * fine.b_ref;
    rep.pass = rep.exponent_in_band && rep.exponent_stable && rep.right_side_flat;
    return rep;
}

}  // namespace gspec
