#include "gspec/modspace.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "gspec/fft.hpp"
#include "gspec/fit.hpp"

namespace gspec {

namespace {

void check_pq(int p) {
    if (p != 1 && p != 2 && p != kPInf)
        throw std::invalid_argument("mixed norm: p, q must be 1, 2 or inf");
}

// l^p accumulation of pre-weighted magnitudes with measure step.
double pnorm(const std::vector<double>& vals, int p, double step) {
    if (p == kPInf) {
        double m = 0.0;
        for (double v : vals) m = std::max(m, v);
        return m;
    }
    double s = 0.0;
    if (p == 1) {
        for (double v : vals) s += v;
        return s * step;
    }
    for (double v : vals) s += v * v;
    return std::sqrt(s * step);
}

}  // namespace

std::string region_name(Region r) {
    return r == Region::frequency_band ? "frequency_band" : "phase_space_ball";
}

Region parse_region(const std::string& name) {
    if (name == "frequency_band") return Region::frequency_band;
    if (name == "phase_space_ball") return Region::phase_space_ball;
    throw std::invalid_argument("unknown region: " + name);
}

double mixed_norm_signal(const SampledSignal& f, const MixedNormParams& prm,
                         const PhaseSpaceGrid& psgrid, double coverage_tol) {
    check_pq(prm.p);
    check_pq(prm.q);
    const SampledSignal phi = make_window(WindowSpec::gaussian(), f.grid);
    const PhaseSpaceFunction V = stft(f, phi, psgrid);
    const int Nx = psgrid.Nx, Nw = psgrid.Nw;

    // Boundary-ring coverage check on the fully weighted mass.  The STFT is
    // bi-periodic (period T in x, 1/dt in omega); an axis whose grid spans a
    // full period is covered exactly and needs no check.
    const double Tx = f.grid.period(), Tw = 1.0 / f.grid.dt;
    const bool x_full = std::abs(Nx * psgrid.dx - Tx) <= 1e-9 * Tx;
    const bool w_full = std::abs(Nw * psgrid.dw - Tw) <= 1e-9 * Tw;
    double ring = 0.0, total = 0.0;
    for (int ix = 0; ix < Nx; ++ix)
        for (int iw = 0; iw < Nw; ++iw) {
            const double wgt = std::pow(1.0 + std::abs(psgrid.xval(ix)), prm.s) *
                               std::pow(1.0 + std::abs(psgrid.wval(iw)), prm.t);
            const double m = std::abs(V.at(ix, iw)) * wgt;
            total += m;
            if ((!x_full && (ix == 0 || ix == Nx - 1)) ||
                (!w_full && (iw == 0 || iw == Nw - 1)))
                ring += m;
        }
    if (total > 0.0 && ring / total > coverage_tol)
        throw CoverageError("mixed_norm_signal: phase-space grid too small",
                            ring / total);

    std::vector<double> inner(Nx), outer(Nw);
    for (int iw = 0; iw < Nw; ++iw) {
        for (int ix = 0; ix < Nx; ++ix)
            inner[ix] = std::abs(V.at(ix, iw)) *
                        std::pow(1.0 + std::abs(psgrid.xval(ix)), prm.s);
        outer[iw] = pnorm(inner, prm.p, psgrid.dx) *
                    std::pow(1.0 + std::abs(psgrid.wval(iw)), prm.t);
    }
    return pnorm(outer, prm.q, psgrid.dw);
}

double mixed_norm_symbol(const PhaseSpaceFunction& F, const MixedNormParams& prm,
                         const SymbolNormOptions& opts) {
    const bool sup_one = prm.p == kPInf && prm.q == 1;
    const bool one_one = prm.p == 1 && prm.q == 1;
    if (!sup_one && !one_one)
        throw std::invalid_argument(
            "mixed_norm_symbol: supported (p,q) are (inf,1) and (1,1)");
    const auto& g2 = F.psgrid;
    const int Nx = g2.Nx, Nw = g2.Nw, n4 = opts.n4;
    if (n4 < 4) throw std::invalid_argument("mixed_norm_symbol: n4 too small");

    const double spanx = Nx * g2.dx, spanw = Nw * g2.dw;
    const double du1 = spanx / n4, du2 = spanw / n4;
    const double dxi = 2.0 * opts.wmax / n4;
    auto u1val = [&](int i) { return g2.x0 + (i + 0.5) * du1; };
    auto u2val = [&](int i) { return g2.w0 + (i + 0.5) * du2; };
    auto xival = [&](int i) { return -opts.wmax + i * dxi; };
    const double phic = std::pow(2.0, 0.25);
    auto phi1 = [&](double t) { return phic * std::exp(-kPi * t * t); };

    // Stage-1 coefficient tables along axis 1.
    Eigen::MatrixXd Wx(n4, Nx);
    Eigen::MatrixXcd Px(n4, Nx);
    for (int a = 0; a < n4; ++a)
        for (int t1 = 0; t1 < Nx; ++t1) {
            const double z1 = g2.xval(t1);
            Wx(a, t1) = phi1(z1 - u1val(a)) * g2.dx;
            Px(a, t1) = std::polar(1.0, -kTwoPi * xival(a) * z1);
        }
    Eigen::MatrixXd Wy(n4, Nw);
    Eigen::MatrixXcd Py(n4, Nw);
    for (int a = 0; a < n4; ++a)
        for (int t2 = 0; t2 < Nw; ++t2) {
            const double z2 = g2.wval(t2);
            Wy(a, t2) = phi1(z2 - u2val(a)) * g2.dw;
            Py(a, t2) = std::polar(1.0, -kTwoPi * xival(a) * z2);
        }

    // Streaming accumulation: sup over (u1,u2) per (xi1,xi2) and the fully
    // weighted integral, without materializing the 4-d array.
    Eigen::MatrixXd supv = Eigen::MatrixXd::Zero(n4, n4);
    double total_11 = 0.0;
    std::mutex acc;
    const int nthreads = std::min(max_threads(), n4);
    std::vector<std::thread> pool;
    auto worker = [&](int tid) {
        Eigen::MatrixXd loc_sup = Eigen::MatrixXd::Zero(n4, n4);
        double loc_tot = 0.0;
        std::vector<cdouble> A(Nw);
        for (int a1 = tid; a1 < n4; a1 += nthreads) {
            for (int e1 = 0; e1 < n4; ++e1) {
                for (int t2 = 0; t2 < Nw; ++t2) {
                    cdouble s = 0.0;
                    for (int t1 = 0; t1 < Nx; ++t1)
                        s += F.at(t1, t2) * Wx(a1, t1) * Px(e1, t1);
                    A[t2] = s;
                }
                for (int a2 = 0; a2 < n4; ++a2)
                    for (int e2 = 0; e2 < n4; ++e2) {
                        cdouble v = 0.0;
                        for (int t2 = 0; t2 < Nw; ++t2)
                            v += A[t2] * Wy(a2, t2) * Py(e2, t2);
                        const double m = std::abs(v);
                        if (sup_one) {
                            double& slot = loc_sup(e1, e2);
                            slot = std::max(slot, m);
                        } else {
                            const double wu = std::pow(
                                1.0 + std::hypot(u1val(a1), u2val(a2)), prm.s);
                            const double wxi = std::pow(
                                1.0 + std::hypot(xival(e1), xival(e2)), prm.t);
                            loc_tot += m * wu * wxi;
                        }
                    }
            }
        }
        std::lock_guard<std::mutex> lock(acc);
        supv = supv.cwiseMax(loc_sup);
        total_11 += loc_tot;
    };
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& t : pool) t.join();

    if (sup_one) {
        double s = 0.0;
        for (int e1 = 0; e1 < n4; ++e1)
            for (int e2 = 0; e2 < n4; ++e2)
                s += supv(e1, e2) *
                     std::pow(1.0 + std::hypot(xival(e1), xival(e2)), prm.t);
        return s * dxi * dxi;
    }
    return total_11 * du1 * du2 * dxi * dxi;
}

SampledSignal dilate_signal(const SampledSignal& f, double a) {
    if (!(a >= 0.25 && a <= 4.0))
        throw std::invalid_argument("dilate_signal: a must lie in [1/4, 4]");
    FourierEvaluator ev(f);
    SampledSignal out = SampledSignal::zero(f.grid);
    // the signal is modeled as supported on the box: arguments dilated past
    // the box edge read zero rather than wrapping periodically
    const double half = 0.5 * f.grid.period();
    for (int n = 0; n < f.grid.L; ++n) {
        const double tau = a * f.grid.time(n);
        out.samples[n] = (tau < -half || tau >= half) ? cdouble(0.0) : ev(tau);
    }
    return out;
}

PhaseSpaceFunction dilate_symbol(const PhaseSpaceFunction& F, double a) {
    if (!(a >= 0.25 && a <= 4.0))
        throw std::invalid_argument("dilate_symbol: a must lie in [1/4, 4]");
    const auto& g2 = F.psgrid;
    const int Nx = g2.Nx, Nw = g2.Nw;
    // Band-limited periodic interpolation along each axis: P * Fhat with
    // P(i, s) the Fourier mode of signed bin s evaluated at the dilated node.
    auto eval_matrix = [](int N, double d0, double origin, double a_) {
        Eigen::MatrixXcd P(N, N);
        const double span = N * d0;
        for (int i = 0; i < N; ++i) {
            const double y = a_ * (origin + i * d0) - origin;
            for (int s = 0; s < N; ++s)
                P(i, s) = std::polar(1.0 / N, kTwoPi * signed_bin(s, N) * y / span);
        }
        return P;
    };
    Eigen::MatrixXcd M(Nx, Nw);
    for (int ix = 0; ix < Nx; ++ix)
        for (int iw = 0; iw < Nw; ++iw) M(ix, iw) = F.at(ix, iw);
    // DFT along x (columns of M), then evaluate.
    {
        std::vector<cdouble> col(Nx);
        for (int iw = 0; iw < Nw; ++iw) {
            for (int ix = 0; ix < Nx; ++ix) col[ix] = M(ix, iw);
            fft_span(col.data(), Nx, -1);
            for (int ix = 0; ix < Nx; ++ix) M(ix, iw) = col[ix];
        }
        M = (eval_matrix(Nx, g2.dx, g2.x0, a) * M).eval();
    }
    {
        std::vector<cdouble> row(Nw);
        for (int ix = 0; ix < Nx; ++ix) {
            for (int iw = 0; iw < Nw; ++iw) row[iw] = M(ix, iw);
            fft_span(row.data(), Nw, -1);
            for (int iw = 0; iw < Nw; ++iw) M(ix, iw) = row[iw];
        }
        M = (M * eval_matrix(Nw, g2.dw, g2.w0, a).transpose()).eval();
    }
    PhaseSpaceFunction out = PhaseSpaceFunction::zero(g2);
    for (int ix = 0; ix < Nx; ++ix)
        for (int iw = 0; iw < Nw; ++iw)
            out.values[static_cast<size_t>(ix) * Nw + iw] = M(ix, iw);
    return out;
}

PhaseSpaceGrid default_truncation_grid(const GridSpec& grid) {
    const int n = grid.L / 2;
    const double dx = 2.0 * grid.dt;
    const double dw = 2.0 / grid.period();
    return PhaseSpaceGrid::centered(n, dx, n, dw);
}

SampledSignal truncate_approx(const SampledSignal& g, const ApproxParams& prm,
                              const PhaseSpaceGrid& psgrid) {
    if (!(prm.epsilon > 0.0 && prm.epsilon <= 1.0))
        throw std::invalid_argument("truncate_approx: epsilon must be in (0, 1]");
    if (!(prm.a <= prm.b && prm.b <= prm.c))
        throw std::invalid_argument("truncate_approx: need a <= b <= c");
    const double R = prm.radius();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g.grid);
    PhaseSpaceFunction V = stft(g, phi, psgrid);
    for (int ix = 0; ix < psgrid.Nx; ++ix)
        for (int iw = 0; iw < psgrid.Nw; ++iw) {
            const double x = psgrid.xval(ix), w = psgrid.wval(iw);
            const bool keep = prm.region == Region::frequency_band
                                  ? std::abs(w) <= R
                                  : std::hypot(x, w) <= R;
            if (!keep) V.values[static_cast<size_t>(ix) * psgrid.Nw + iw] = 0.0;
        }
    return istft(V, phi).signal;
}

TradeoffTable tradeoff_table(const SampledSignal& g, double a, double b, double c,
                             const std::vector<double>& eps_list,
                             const PhaseSpaceGrid& psgrid) {
    if (eps_list.size() < 2)
        throw std::invalid_argument("tradeoff_table: need at least two epsilons");
    TradeoffTable tbl{};
    for (Region region : {Region::frequency_band, Region::phase_space_ball}) {
        std::vector<double> eps, errs, grows;
        for (double e : eps_list) {
            ApproxParams prm{a, b, c, e, region};
            const SampledSignal h = truncate_approx(g, prm, psgrid);
            const SampledSignal diff = add(g, h, 1.0, -1.0);
            MixedNormParams na, nc;
            if (region == Region::frequency_band) {
                na = MixedNormParams{kPInf, 1, 0.0, a};
                nc = MixedNormParams{kPInf, 1, 0.0, c};
            } else {
                na = MixedNormParams{1, 1, a, a};
                nc = MixedNormParams{1, 1, c, c};
            }
            const double err = mixed_norm_signal(diff, na, psgrid);
            const double grow = mixed_norm_signal(h, nc, psgrid);
            tbl.rows.push_back(TradeoffRow{e, region, err, grow});
            eps.push_back(e);
            errs.push_back(err);
            grows.push_back(grow);
        }
        const PowerFit fe = fit_power(eps, errs);
        const PowerFit fg = fit_power(eps, grows);
        if (region == Region::frequency_band) {
            tbl.slope_err_band = fe.exponent;
            tbl.slope_growth_band = fg.exponent;
        } else {
            tbl.slope_err_ball = fe.exponent;
            tbl.slope_growth_ball = fg.exponent;
        }
    }
    return tbl;
}

}  // namespace gspec
