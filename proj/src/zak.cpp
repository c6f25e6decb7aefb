// Continuous-system frame bound oracle for G(g, alpha Z^2), alpha = p/q.
//
// A unitary rescaling f -> sqrt(alpha) f(alpha .) carries G(g, alpha Z^2)
// to G(w, Z x bZ) with w(t) = sqrt(alpha) g(alpha t) and b = alpha^2 = P/Q,
// P = p^2, Q = q^2. Its frame operator has the Walnut representation
//   S f(t) = (1/b) sum_k G_k(t) f(t - kQ/P),
//   G_k(t) = sum_n w(t - n) conj(w(t - n - kQ/P)),
// which fiberizes over (t, nu) in [0, 1/P) x [0, 1) into P x P Hermitian
// matrices whose spectra exhaust the spectrum of S. The window is treated
// as supported on the sampling box (band-limited interpolation inside,
// zero outside).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "gspec/gabor.hpp"
#include "gspec/tfcore.hpp"

namespace gspec {

namespace {

struct FiberWorkspace {
    int P;
    double b;
    int kmax;
    double tsup;  // support half-width of w
    const std::vector<cdouble>* wcache;
    int idx0;  // wcache[i] = w((i - idx0) / P + t_offset)
};

}  // namespace

FrameBounds zak_lattice_bounds(const SampledSignal& g, int alpha_num,
                               int alpha_den, int res) {
    if (alpha_num <= 0 || alpha_den <= 0)
        throw std::invalid_argument("zak_lattice_bounds: alpha must be positive");
    if (std::gcd(alpha_num, alpha_den) != 1)
        throw std::invalid_argument("zak_lattice_bounds: p/q must be in lowest terms");
    if (res < 2) throw std::invalid_argument("zak_lattice_bounds: res must be >= 2");
    const double alpha = static_cast<double>(alpha_num) / alpha_den;
    if (!(alpha >= 0.5 && alpha < 2.0))
        throw std::invalid_argument("zak_lattice_bounds: alpha must lie in [1/2, 2)");

    const int P = alpha_num * alpha_num;
    const int Q = alpha_den * alpha_den;
    const double b = static_cast<double>(P) / Q;  // = alpha^2
    const double shift = static_cast<double>(Q) / P;

    // w(t) = sqrt(alpha) g(alpha t), supported on |t| < tsup.
    const double tsup = 0.5 * g.grid.period() / alpha;
    FourierEvaluator geval(g);
    auto wval = [&](double t) -> cdouble {
        const double tau = alpha * t;
        if (std::abs(tau) >= 0.5 * g.grid.period()) return 0.0;
        return std::sqrt(alpha) * geval(tau);
    };

    const int kmax = static_cast<int>(std::ceil((2.0 * tsup + 1.0) / shift)) + 1;
    const int nmax = static_cast<int>(std::ceil(tsup)) + 1;

    double A = std::numeric_limits<double>::infinity();
    double B = 0.0;
    double herm_defect = 0.0;
    std::mutex acc_mutex;

    const int nthreads = std::min(max_threads(), res);
    std::vector<std::thread> pool;

    auto worker = [&](int tid) {
        Eigen::MatrixXcd M(P, P);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig;
        double locA = std::numeric_limits<double>::infinity();
        double locB = 0.0, loc_defect = 0.0;
        // Cached samples of w on the arithmetic progression t + n/P covering
        // every argument needed at this t-sample.
        const int span = (nmax + 1) * P + (kmax + 1) * Q + P;
        std::vector<cdouble> wc(2 * span + 1);
        for (int it = tid; it < res; it += nthreads) {
            const double t = static_cast<double>(it) / (static_cast<double>(res) * P);
            for (int i = -span; i <= span; ++i)
                wc[i + span] = wval(t + static_cast<double>(i) / P);
            auto w_at = [&](int i) { return wc[i + span]; };
            // G_k(t + j/P) for the needed (j, k) pairs; argument index of
            // w(t + j/P - n) is j - nP and of the shifted copy j - nP - kQ.
            std::vector<cdouble> Gk(static_cast<size_t>(P) * (2 * kmax + 1));
            for (int j = 0; j < P; ++j)
                for (int k = -kmax; k <= kmax; ++k) {
                    cdouble s = 0.0;
                    for (int n = -nmax; n <= nmax; ++n) {
                        const int i1 = j - n * P;
                        const int i2 = i1 - k * Q;
                        if (std::abs(i1) > span || std::abs(i2) > span) continue;
                        s += w_at(i1) * std::conj(w_at(i2));
                    }
                    Gk[static_cast<size_t>(j) * (2 * kmax + 1) + (k + kmax)] = s;
                }
            for (int iv = 0; iv < res; ++iv) {
                const double nu = static_cast<double>(iv) / res;
                M.setZero();
                for (int j = 0; j < P; ++j)
                    for (int k = -kmax; k <= kmax; ++k) {
                        const cdouble gk =
                            Gk[static_cast<size_t>(j) * (2 * kmax + 1) + (k + kmax)];
                        if (std::abs(gk) == 0.0) continue;
                        long d = static_cast<long>(j) - static_cast<long>(k) * Q;
                        long r = ((d % P) + P) % P;
                        long m = (d - r) / P;
                        M(j, r) += (1.0 / b) * gk *
                                   std::polar(1.0, kTwoPi * static_cast<double>(m) * nu);
                    }
                loc_defect = std::max(loc_defect, (M - M.adjoint()).cwiseAbs().maxCoeff());
                eig.compute((M + M.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
                locA = std::min(locA, eig.eigenvalues().minCoeff());
                locB = std::max(locB, eig.eigenvalues().maxCoeff());
            }
        }
        std::lock_guard<std::mutex> lock(acc_mutex);
        A = std::min(A, locA);
        B = std::max(B, locB);
        herm_defect = std::max(herm_defect, loc_defect);
    };
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& t : pool) t.join();

    if (herm_defect > 1e-6 * std::max(1.0, B))
        throw std::runtime_error("zak_lattice_bounds: fiber matrices not Hermitian");

    FrameBounds fb;
    fb.A = std::max(0.0, A);
    fb.B = B;
    fb.method = "zak";
    fb.resolution = "res=" + std::to_string(res) + ",p=" + std::to_string(alpha_num) +
                    ",q=" + std::to_string(alpha_den);
    return fb;
}

}  // namespace gspec
