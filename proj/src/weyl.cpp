#include "gspec/weyl.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "gspec/fft.hpp"

namespace gspec {

OperatorMatrix::OperatorMatrix(Eigen::MatrixXcd m, double dt_)
    : entries(std::move(m)), dt(dt_), hermitian_defect(0.0) {
    if (entries.rows() != entries.cols())
        throw std::invalid_argument("OperatorMatrix: matrix must be square");
    hermitian_defect = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

double OperatorMatrix::max_abs() const {
    return entries.size() > 0 ? entries.cwiseAbs().maxCoeff() : 0.0;
}

bool OperatorMatrix::hermitian_ok(double rel_tol) const {
    double scale = max_abs();
    return hermitian_defect <= rel_tol * std::max(scale, 1e-300);
}

OperatorMatrix weyl_quantize(const PhaseSpaceFunction& sigma, const GridSpec& grid) {
    const PhaseSpaceGrid& ps = sigma.psgrid;
    const int L = grid.L;
    const double dt = grid.dt;
    if (ps.Nx != 2 * L || std::abs(ps.dx - 0.5 * dt) > 1e-12 ||
        std::abs(ps.x0 - grid.t0) > 1e-9)
        throw std::invalid_argument(
            "weyl_quantize: symbol spatial grid must sample midpoints (spacing dt/2 over the box)");
    const int M = ps.Nw;
    if (std::abs(M * ps.dw * dt - 1.0) > 1e-9)
        throw std::invalid_argument(
            "weyl_quantize: symbol frequency grid must cover the Nyquist band (Nw*dw*dt == 1)");

    // Per midpoint anti-diagonal: kappa_s(tau) = sum_k sigma(s, w_k) e^{2 pi i tau w_k} dw,
    // evaluated at tau = (j - i) dt via an inverse DFT along the omega axis.
    // With w0 = -Nw*dw/2 the origin phase reduces to (-1)^(j-i).
    Eigen::MatrixXcd K(L, L);
    std::vector<cdouble> row(M);
    std::vector<std::vector<cdouble>> kappa(2 * L - 1);
    for (int s = 0; s <= 2 * L - 2; ++s) {
        for (int k = 0; k < M; ++k) row[k] = sigma.at(s, k);
        fft(row, +1);  // row[m] = sum_k sigma e^{2 pi i k m / M}
        kappa[s] = row;
    }
    const double w0 = ps.wval(0);
    for (int j = 0; j < L; ++j) {
        for (int i = 0; i < L; ++i) {
            int d = j - i;
            int m = ((d % M) + M) % M;
            double phase = kTwoPi * d * dt * w0;
            cdouble ph(std::cos(phase), std::sin(phase));
            K(j, i) = dt * ps.dw * ph * kappa[i + j][m];
        }
    }
    return OperatorMatrix(std::move(K), dt);
}

SpectralEdges spectral_edges(const OperatorMatrix& T, int dense_cutoff) {
    if (!T.hermitian_ok())
        throw std::invalid_argument("spectral_edges: matrix is not Hermitian within tolerance");
    const int n = T.dim();
    if (n <= dense_cutoff) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(T.entries,
                                                           Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        return SpectralEdges{ev(0), ev(n - 1)};
    }

    // Lanczos with full reorthogonalization, fixed start vector.
    const int maxit = std::min(n, 600);
    std::mt19937 rng(42);
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::MatrixXcd V(n, maxit + 1);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = cdouble(nd(rng), nd(rng));
    v /= v.norm();
    V.col(0) = v;
    std::vector<double> alpha, beta;
    Eigen::VectorXcd w;
    double normT = T.entries.cwiseAbs().rowwise().sum().maxCoeff();
    int m = 0;
    double lo = 0.0, hi = 0.0;
    Eigen::MatrixXd tri;
    for (int it = 0; it < maxit; ++it) {
        w = T.entries.selfadjointView<Eigen::Lower>() * V.col(it);
        double a = std::real(V.col(it).dot(w));
        alpha.push_back(a);
        w -= a * V.col(it);
        if (it > 0) w -= beta.back() * V.col(it - 1);
        // full reorthogonalization
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j <= it; ++j) w -= V.col(j).dot(w) * V.col(j);
        double b = w.norm();
        m = it + 1;
        // Ritz values of the tridiagonal section
        tri = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) tri(i, i) = alpha[i];
        for (int i = 0; i + 1 < m; ++i) tri(i, i + 1) = tri(i + 1, i) = beta.size() > (size_t)i ? beta[i] : 0.0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ts(tri);
        lo = ts.eigenvalues()(0);
        hi = ts.eigenvalues()(m - 1);
        if (b < 1e-12 * normT) break;
        // residual heuristic: last component of extreme Ritz vectors * b
        double r1 = std::abs(ts.eigenvectors()(m - 1, 0)) * b;
        double r2 = std::abs(ts.eigenvectors()(m - 1, m - 1)) * b;
        if (it > 10 && std::max(r1, r2) <= 1e-8 * normT) break;
        beta.push_back(b);
        V.col(it + 1) = w / b;
    }
    return SpectralEdges{lo, hi};
}

double operator_norm(const Eigen::MatrixXcd& T) {
    const int n = (int)T.rows();
    if (n == 0) return 0.0;
    if (T.cwiseAbs().maxCoeff() == 0.0) return 0.0;
    std::mt19937 rng(42);
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = cdouble(nd(rng), nd(rng));
    v /= v.norm();
    double lam = 0.0;
    for (int it = 0; it < 2000; ++it) {
        Eigen::VectorXcd w = T.adjoint() * (T * v);
        double nl = w.norm();
        if (nl == 0.0) return 0.0;
        w /= nl;
        double res = (w - v).norm();
        // also check against the sign-flipped fixed point
        double res2 = (w + v).norm();
        lam = nl;
        v = w;
        if (std::min(res, res2) < 1e-10) break;
    }
    return std::sqrt(lam);
}

double operator_norm(const OperatorMatrix& T) { return operator_norm(T.entries); }

PhaseSpaceFunction radial_derivative(const PhaseSpaceFunction& F) {
    const PhaseSpaceGrid& ps = F.psgrid;
    PhaseSpaceFunction out = PhaseSpaceFunction::zero(ps);

    // x * dF/dx, spectral derivative along the x axis (per omega column)
    std::vector<cdouble> col(ps.Nx);
    const double Tx = ps.Nx * ps.dx;
    for (int k = 0; k < ps.Nw; ++k) {
        for (int i = 0; i < ps.Nx; ++i) col[i] = F.at(i, k);
        fft(col, -1);
        for (int i = 0; i < ps.Nx; ++i) {
            double xi = signed_bin(i, ps.Nx) / Tx;
            col[i] *= cdouble(0.0, kTwoPi * xi);
        }
        fft(col, +1);
        for (int i = 0; i < ps.Nx; ++i) out.at(i, k) += ps.xval(i) * col[i] / (double)ps.Nx;
    }

    // omega * dF/domega along rows
    std::vector<cdouble> row(ps.Nw);
    const double Tw = ps.Nw * ps.dw;
    for (int i = 0; i < ps.Nx; ++i) {
        for (int k = 0; k < ps.Nw; ++k) row[k] = F.at(i, k);
        fft(row, -1);
        for (int k = 0; k < ps.Nw; ++k) {
            double xi = signed_bin(k, ps.Nw) / Tw;
            row[k] *= cdouble(0.0, kTwoPi * xi);
        }
        fft(row, +1);
        for (int k = 0; k < ps.Nw; ++k) out.at(i, k) += ps.wval(k) * row[k] / (double)ps.Nw;
    }
    return out;
}

Eigen::MatrixXcd rank_one(const SampledSignal& h, const SampledSignal& g) {
    if (!(h.grid == g.grid)) throw std::invalid_argument("rank_one: incompatible grids");
    const int L = h.grid.L;
    Eigen::VectorXcd hv(L), gv(L);
    for (int i = 0; i < L; ++i) {
        hv(i) = h.samples[i];
        gv(i) = g.samples[i];
    }
    return (hv * gv.adjoint()) * h.grid.dt;
}

}  // namespace gspec
