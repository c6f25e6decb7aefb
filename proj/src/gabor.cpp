#include "gspec/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "gspec/fft.hpp"
#include "gspec/modspace.hpp"

namespace gspec {

int rel_separation(const AtomSet& atoms) {
    const auto& pts = atoms.points;
    const int n = static_cast<int>(pts.size());
    if (n == 0) return 0;
    // The optimal half-open unit square can be slid until its left edge
    // sits on some point's x and its bottom edge on some point's omega.
    int best = 1;
    std::vector<double> ws;
    ws.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double ax = pts[i].x;
        ws.clear();
        for (int j = 0; j < n; ++j)
            if (pts[j].x >= ax && pts[j].x < ax + 1.0) ws.push_back(pts[j].omega);
        std::sort(ws.begin(), ws.end());
        const int m = static_cast<int>(ws.size());
        int lo = 0;
        for (int hi = 0; hi < m; ++hi) {
            while (ws[hi] - ws[lo] >= 1.0) ++lo;
            best = std::max(best, hi - lo + 1);
        }
    }
    return best;
}

AtomSet dilate_set(const AtomSet& atoms, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("dilate_set: alpha must be positive");
    AtomSet out;
    out.periodic_box = atoms.periodic_box;
    out.points.reserve(atoms.points.size());
    for (const auto& z : atoms.points)
        out.points.push_back(TFPoint{alpha * z.x, alpha * z.omega});
    return out;
}

AtomSet crop_to_box(const AtomSet& atoms, const PhaseSpaceBox& box) {
    AtomSet out;
    out.periodic_box = box;
    for (const auto& z : atoms.points)
        if (box.contains(z)) out.points.push_back(z);
    return out;
}

AtomSet lattice_patch(double alpha, const PhaseSpaceBox& box) {
    if (!(alpha > 0.0)) throw std::invalid_argument("lattice_patch: alpha must be positive");
    AtomSet out;
    out.periodic_box = box;
    const auto range = [&](double half) {
        const long lo = static_cast<long>(std::ceil(-half / alpha - 1e-12));
        const long hi = static_cast<long>(std::floor((half - 1e-12) / alpha));
        return std::pair<long, long>{lo, hi};
    };
    auto [mx0, mx1] = range(box.half_x);
    auto [mw0, mw1] = range(box.half_w);
    for (long mx = mx0; mx <= mx1; ++mx)
        for (long mw = mw0; mw <= mw1; ++mw) {
            TFPoint z{alpha * mx, alpha * mw};
            if (box.contains(z)) out.points.push_back(z);
        }
    return out;
}

AtomSet jittered_patch(double alpha, const PhaseSpaceBox& box, double jitter,
                       unsigned seed) {
    if (jitter < 0.0) throw std::invalid_argument("jittered_patch: jitter must be >= 0");
    AtomSet base = lattice_patch(alpha, box);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, jitter);
    AtomSet out;
    out.periodic_box = box;
    for (const auto& z : base.points) {
        TFPoint p{z.x + u(rng), z.omega + u(rng)};
        if (box.contains(p)) out.points.push_back(p);
    }
    return out;
}

AtomSet random_separated(int count, double min_dist, const PhaseSpaceBox& box,
                         unsigned seed) {
    if (count <= 0) throw std::invalid_argument("random_separated: count must be positive");
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ux(-box.half_x, box.half_x);
    std::uniform_real_distribution<double> uw(-box.half_w, box.half_w);
    AtomSet out;
    out.periodic_box = box;
    int attempts = 0;
    const int max_attempts = 20000 * count;
    while (static_cast<int>(out.points.size()) < count) {
        if (++attempts > max_attempts)
            throw std::runtime_error("random_separated: could not place points");
        TFPoint z{ux(rng), uw(rng)};
        bool ok = true;
        for (const auto& p : out.points) {
            if (std::hypot(p.x - z.x, p.omega - z.omega) < min_dist) {
                ok = false;
                break;
            }
        }
        if (ok) out.points.push_back(z);
    }
    return out;
}

OperatorMatrix frame_operator(const SampledSignal& g, const SampledSignal& h,
                              const AtomSet& atoms, const GridSpec& grid) {
    if (g.grid.L != grid.L || h.grid.L != grid.L)
        throw std::invalid_argument("frame_operator: grid mismatch");
    const int L = grid.L;
    const int n = static_cast<int>(atoms.points.size());
    if (n == 0) throw std::invalid_argument("frame_operator: empty atom set");
    Eigen::MatrixXcd G(L, n), H(L, n);
    const int nthreads = std::min(max_threads(), n);
    std::vector<std::thread> pool;
    auto worker = [&](int tid) {
        for (int k = tid; k < n; k += nthreads) {
            const auto gz = tf_shift(g, atoms.points[k]);
            const auto hz = tf_shift(h, atoms.points[k]);
            for (int i = 0; i < L; ++i) {
                G(i, k) = gz.samples[i];
                H(i, k) = hz.samples[i];
            }
        }
    };
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& t : pool) t.join();
    Eigen::MatrixXcd S = H * G.adjoint() * grid.dt;
    return OperatorMatrix(std::move(S), grid.dt);
}

PhaseSpaceFunction frame_symbol(const SampledSignal& g, const SampledSignal& h,
                                const AtomSet& atoms, double delta,
                                const PhaseSpaceGrid& psgrid) {
    if (atoms.points.empty()) throw std::invalid_argument("frame_symbol: empty atom set");
    PhaseSpaceFunction W = wigner(h, g, psgrid);
    if (delta != 0.0) {
        if (!(1.0 + delta > 0.0))
            throw std::invalid_argument("frame_symbol: delta must exceed -1");
        W = dilate_symbol(W, 1.0 / std::sqrt(1.0 + delta));
    }
    const int Nx = psgrid.Nx, Nw = psgrid.Nw;
    // FFT over both axes (row-major, x outer).
    std::vector<cdouble> buf(std::max(Nx, Nw));
    auto& v = W.values;
    for (int ix = 0; ix < Nx; ++ix) fft_span(&v[static_cast<size_t>(ix) * Nw], Nw, -1);
    for (int iw = 0; iw < Nw; ++iw) {
        for (int ix = 0; ix < Nx; ++ix) buf[ix] = v[static_cast<size_t>(ix) * Nw + iw];
        fft_span(buf.data(), Nx, -1);
        for (int ix = 0; ix < Nx; ++ix) v[static_cast<size_t>(ix) * Nw + iw] = buf[ix];
    }
    // Multiply by the exact translation multiplier sum_l e^{-2pi i <xi, l>}
    // accumulated as a sum of rank-one phase tables.
    Eigen::MatrixXcd mult = Eigen::MatrixXcd::Zero(Nx, Nw);
    Eigen::VectorXcd px(Nx), pw(Nw);
    const double fx = 1.0 / (Nx * psgrid.dx);
    const double fw = 1.0 / (Nw * psgrid.dw);
    for (const auto& l : atoms.points) {
        for (int ix = 0; ix < Nx; ++ix) {
            const double xi = signed_bin(ix, Nx) * fx;
            px(ix) = std::polar(1.0, -kTwoPi * xi * l.x);
        }
        for (int iw = 0; iw < Nw; ++iw) {
            const double xw = signed_bin(iw, Nw) * fw;
            pw(iw) = std::polar(1.0, -kTwoPi * xw * l.omega);
        }
        mult.noalias() += px * pw.transpose();
    }
    const double scale = 1.0 / (static_cast<double>(Nx) * Nw);
    for (int ix = 0; ix < Nx; ++ix)
        for (int iw = 0; iw < Nw; ++iw)
            v[static_cast<size_t>(ix) * Nw + iw] *= mult(ix, iw) * scale;
    // Inverse FFT over both axes.
    for (int ix = 0; ix < Nx; ++ix) fft_span(&v[static_cast<size_t>(ix) * Nw], Nw, +1);
    for (int iw = 0; iw < Nw; ++iw) {
        for (int ix = 0; ix < Nx; ++ix) buf[ix] = v[static_cast<size_t>(ix) * Nw + iw];
        fft_span(buf.data(), Nx, +1);
        for (int ix = 0; ix < Nx; ++ix) v[static_cast<size_t>(ix) * Nw + iw] = buf[ix];
    }
    return W;
}

FrameBounds frame_bounds(const SampledSignal& g, const AtomSet& atoms,
                         const GridSpec& grid) {
    const double n2 = norm2(g);
    if (std::abs(n2 - 1.0) > 1e-8)
        throw std::invalid_argument("frame_bounds: window must have unit norm");
    OperatorMatrix S = frame_operator(g, g, atoms, grid);
    const SpectralEdges e = spectral_edges(S);
    FrameBounds fb;
    fb.A = std::max(0.0, e.sigma_minus);
    fb.B = e.sigma_plus;
    fb.method = grid.L <= 2048 ? "dense" : "lanczos";
    fb.resolution = "L=" + std::to_string(grid.L);
    return fb;
}

std::pair<int, int> snap_rational(double alpha, int qmax) {
    if (!(alpha > 0.0) || qmax < 1)
        throw std::invalid_argument("snap_rational: bad arguments");
    int best_p = 1, best_q = 1;
    double best_err = std::abs(alpha - 1.0);
    for (int q = 1; q <= qmax; ++q) {
        const int p = std::max(1, static_cast<int>(std::lround(alpha * q)));
        if (std::gcd(p, q) != 1) continue;
        const double err = std::abs(alpha - static_cast<double>(p) / q);
        if (err < best_err - 1e-15) {
            best_err = err;
            best_p = p;
            best_q = q;
        }
    }
    return {best_p, best_q};
}

}  // namespace gspec
