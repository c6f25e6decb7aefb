#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gspec/corpus.hpp"
#include "gspec/tfcore.hpp"
#include "gspec/weyl.hpp"
#include "helpers.hpp"

using namespace gspec;
using gspec::testing::random_hermitian;
using gspec::testing::small_grid;

TEST_CASE("constant symbol quantizes to the identity") {
    const GridSpec g = small_grid();
    PhaseSpaceFunction one = PhaseSpaceFunction::zero(quantization_grid(g));
    for (auto& v : one.values) v = 1.0;
    const OperatorMatrix I = weyl_quantize(one, g);
    double dev = 0.0;
    for (int i = 0; i < g.L; ++i)
        for (int j = 0; j < g.L; ++j)
            dev = std::max(dev, std::abs(I.entries(i, j) - (i == j ? 1.0 : 0.0)));
    CHECK(dev < 1e-10);
}

TEST_CASE("position symbol quantizes to multiplication by t") {
    const GridSpec g = small_grid();
    const PhaseSpaceGrid qg = quantization_grid(g);
    PhaseSpaceFunction sig = PhaseSpaceFunction::zero(qg);
    for (int ix = 0; ix < qg.Nx; ++ix)
        for (int iw = 0; iw < qg.Nw; ++iw) sig.at(ix, iw) = qg.xval(ix);
    const OperatorMatrix T = weyl_quantize(sig, g);
    double dev = 0.0;
    for (int i = 0; i < g.L; ++i)
        for (int j = 0; j < g.L; ++j)
            dev = std::max(dev, std::abs(T.entries(i, j) - (i == j ? g.time(i) : 0.0)));
    CHECK(dev < 1e-9);
}

TEST_CASE("wigner distribution quantizes to the rank-one projector") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    const SampledSignal f = random_signal(g, 17);
    const PhaseSpaceFunction W = wigner(f, phi, quantization_grid(g));
    const OperatorMatrix T = weyl_quantize(W, g);
    const Eigen::MatrixXcd P = rank_one(f, phi);
    CHECK((T.entries - P).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("quantization is linear and conjugate-symmetric") {
    const GridSpec g = small_grid();
    const PhaseSpaceGrid qg = quantization_grid(g);
    const PhaseSpaceFunction s1 = random_symbol(qg, 1);
    const PhaseSpaceFunction s2 = random_symbol(qg, 2);
    PhaseSpaceFunction s3 = PhaseSpaceFunction::zero(qg);
    for (size_t i = 0; i < s3.values.size(); ++i)
        s3.values[i] = 2.0 * s1.values[i] - 0.5 * s2.values[i];
    const OperatorMatrix T1 = weyl_quantize(s1, g);
    const OperatorMatrix T2 = weyl_quantize(s2, g);
    const OperatorMatrix T3 = weyl_quantize(s3, g);
    CHECK((T3.entries - 2.0 * T1.entries + 0.5 * T2.entries).cwiseAbs().maxCoeff() <
          1e-10);
    // real symbols give Hermitian operators
    CHECK(T1.hermitian_ok());
    CHECK(T2.hermitian_ok());
}

TEST_CASE("extreme spectral values are 1-Lipschitz in the operator norm") {
    int violations = 0;
    for (unsigned seed = 0; seed < 200; ++seed) {
        const Eigen::MatrixXcd A = random_hermitian(64, 2 * seed);
        const Eigen::MatrixXcd B = random_hermitian(64, 2 * seed + 1);
        const SpectralEdges ea = spectral_edges(OperatorMatrix(A, 1.0));
        const SpectralEdges eb = spectral_edges(OperatorMatrix(B, 1.0));
        const double dist = operator_norm(Eigen::MatrixXcd(A - B));
        if (std::abs(ea.sigma_minus - eb.sigma_minus) > dist + 1e-10) ++violations;
        if (std::abs(ea.sigma_plus - eb.sigma_plus) > dist + 1e-10) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("negative control: trace distance does not bound edge motion") {
    // |sigma+(A)-sigma+(B)| <= ||A-B|| is sharp; the analogous claim with
    // the (scaled) trace of A-B in place of the norm must fail somewhere.
    int violations = 0;
    for (unsigned seed = 0; seed < 50; ++seed) {
        const Eigen::MatrixXcd A = random_hermitian(64, 1000 + 2 * seed);
        const Eigen::MatrixXcd B = random_hermitian(64, 1001 + 2 * seed);
        const SpectralEdges ea = spectral_edges(OperatorMatrix(A, 1.0));
        const SpectralEdges eb = spectral_edges(OperatorMatrix(B, 1.0));
        const double fake = std::abs((A - B).trace().real()) / 64.0;
        if (std::abs(ea.sigma_plus - eb.sigma_plus) > fake + 1e-10) ++violations;
    }
    CHECK(violations > 0);
}

TEST_CASE("lanczos edges match the dense solver") {
    const Eigen::MatrixXcd A = random_hermitian(300, 99);
    const OperatorMatrix T(A, 1.0);
    const SpectralEdges dense = spectral_edges(T);
    const SpectralEdges lz = spectral_edges(T, /*dense_cutoff=*/10);
    CHECK(std::abs(dense.sigma_minus - lz.sigma_minus) < 1e-7 * operator_norm(T));
    CHECK(std::abs(dense.sigma_plus - lz.sigma_plus) < 1e-7 * operator_norm(T));
}

TEST_CASE("operator norm matches the dense spectral radius for Hermitian input") {
    const Eigen::MatrixXcd A = random_hermitian(128, 5);
    const SpectralEdges e = spectral_edges(OperatorMatrix(A, 1.0));
    const double want = std::max(std::abs(e.sigma_minus), std::abs(e.sigma_plus));
    CHECK(operator_norm(A) == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("radial derivative agrees with finite differences") {
    const PhaseSpaceGrid ps = PhaseSpaceGrid::centered(128, 0.125, 128, 0.125);
    const PhaseSpaceFunction F = random_symbol(ps, 77, 4, 1.8);
    const PhaseSpaceFunction D = radial_derivative(F);
    double dev = 0.0, scale = 0.0;
    // 5-point central differences on the grid lines through (ix, iw)
    for (int ix : {30, 64, 90})
        for (int iw : {25, 64, 100}) {
            const double x = ps.xval(ix), w = ps.wval(iw);
            const double dxF = (-std::real(F.at(ix + 2, iw)) + 8.0 * std::real(F.at(ix + 1, iw)) -
                                8.0 * std::real(F.at(ix - 1, iw)) + std::real(F.at(ix - 2, iw))) /
                               (12.0 * ps.dx);
            const double dwF = (-std::real(F.at(ix, iw + 2)) + 8.0 * std::real(F.at(ix, iw + 1)) -
                                8.0 * std::real(F.at(ix, iw - 1)) + std::real(F.at(ix, iw - 2))) /
                               (12.0 * ps.dw);
            const double want = x * dxF + w * dwF;
            dev = std::max(dev, std::abs(std::real(D.at(ix, iw)) - want));
            scale = std::max(scale, std::abs(want));
        }
    // tolerance limited by the 5-point stencil truncation error, not the
    // spectral derivative
    CHECK(dev < 5e-3 * std::max(1.0, scale));
}

TEST_CASE("quantization rejects mismatched grids") {
    const GridSpec g = small_grid();
    const PhaseSpaceFunction F = PhaseSpaceFunction::zero(default_psgrid(64, 4.0));
    CHECK_THROWS_AS((void)weyl_quantize(F, g), std::invalid_argument);
}
