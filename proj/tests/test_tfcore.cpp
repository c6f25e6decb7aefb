#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gspec/corpus.hpp"
#include "gspec/tfcore.hpp"
#include "helpers.hpp"

using namespace gspec;
using gspec::testing::small_grid;

namespace {
double rel_err(const SampledSignal& a, const SampledSignal& b) {
    return norm2(add(a, b, 1.0, -1.0)) / norm2(a);
}
}  // namespace

TEST_CASE("windows have unit norm and the gaussian hits its peak value") {
    const GridSpec g = small_grid();
    for (auto spec : {WindowSpec::gaussian(), WindowSpec::hermite(3),
                      WindowSpec::raised_cosine(2.0)}) {
        const SampledSignal w = make_window(spec, g);
        CHECK(norm2(w) == doctest::Approx(1.0).epsilon(1e-12));
    }
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    // phi(0) = 2^{1/4}; t=0 is sample index L/2 on the symmetric grid.
    CHECK(std::abs(phi.samples[g.L / 2] - std::pow(2.0, 0.25)) < 1e-9);
    // hermite windows are orthogonal
    const SampledSignal h1 = make_window(WindowSpec::hermite(1), g);
    const SampledSignal h4 = make_window(WindowSpec::hermite(4), g);
    CHECK(std::abs(inner(h1, h4)) < 1e-9);
}

TEST_CASE("translate is unitary, invertible, and matches integer rotation") {
    const GridSpec g = small_grid();
    const SampledSignal f = random_signal(g, 7);
    const SampledSignal t1 = translate(f, 0.3711);
    CHECK(norm2(t1) == doctest::Approx(norm2(f)).epsilon(1e-12));
    CHECK(rel_err(f, translate(t1, -0.3711)) < 1e-12);
    // shift by an exact number of samples = index rotation
    const SampledSignal t2 = translate(f, 5 * g.dt);
    double dev = 0.0;
    for (int n = 0; n < g.L; ++n)
        dev = std::max(dev, std::abs(t2.samples[n] - f.samples[(n - 5 + g.L) % g.L]));
    CHECK(dev < 1e-10);
}

TEST_CASE("modulation and translation satisfy the commutation phase") {
    const GridSpec g = small_grid();
    const SampledSignal f = random_signal(g, 11);
    const double x = 0.625, w = 1.375;
    // M_w T_x = e^{2pi i x w} T_x M_w
    const SampledSignal lhs = modulate(translate(f, x), w);
    SampledSignal rhs = translate(modulate(f, w), x);
    rhs = scale(rhs, std::polar(1.0, kTwoPi * x * w));
    CHECK(rel_err(lhs, rhs) < 1e-12);
}

TEST_CASE("gaussian stft magnitude matches the closed form") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    // |<phi, pi(z) phi>| = e^{-pi |z|^2 / 2}
    for (auto z : {TFPoint{1.0, 0.0}, TFPoint{0.5, 0.5}, TFPoint{-0.75, 1.25}}) {
        const double want = std::exp(-kPi * (z.x * z.x + z.omega * z.omega) / 2.0);
        CHECK(std::abs(std::abs(stft_point(phi, phi, z)) - want) < 1e-8);
    }
}

TEST_CASE("stft covariance under time-frequency shifts") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    const SampledSignal f = random_signal(g, 3);
    const TFPoint z1{0.375, -1.25};
    for (auto z2 : {TFPoint{0.5, 0.25}, TFPoint{-1.0, 2.0}}) {
        const cdouble lhs = stft_point(tf_shift(f, z1), phi, z2);
        const cdouble rhs = std::polar(1.0, -kTwoPi * z1.x * (z2.omega - z1.omega)) *
                            stft_point(f, phi, TFPoint{z2.x - z1.x, z2.omega - z1.omega});
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("grid stft agrees with single-point evaluation (fast vs direct path)") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    const SampledSignal f = random_signal(g, 5);
    // aligned grid exercises the fft fast path
    const PhaseSpaceGrid ps = default_psgrid(64, 4.0);
    const PhaseSpaceFunction V = stft(f, phi, ps);
    for (int ix : {0, 17, 40})
        for (int iw : {3, 32, 63}) {
            const cdouble direct =
                stft_point(f, phi, TFPoint{ps.xval(ix), ps.wval(iw)});
            CHECK(std::abs(V.at(ix, iw) - direct) < 1e-10);
        }
}

TEST_CASE("stft is an isometry on band-limited signals") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    const PhaseSpaceGrid ps = default_psgrid(256, 8.0);
    for (unsigned seed : {1u, 2u, 3u}) {
        const SampledSignal f = random_signal(g, seed);
        const PhaseSpaceFunction V = stft(f, phi, ps);
        double e = 0.0;
        for (const auto& v : V.values) e += std::norm(v);
        e = std::sqrt(e * ps.cell());
        CHECK(std::abs(e - norm2(f)) / norm2(f) < 1e-6);
    }
}

TEST_CASE("istft inverts the stft on covered signals") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    const PhaseSpaceGrid ps = default_psgrid(256, 8.0);
    const SampledSignal f = random_signal(g, 9);
    const IstftResult rec = istft(stft(f, phi, ps), phi);
    CHECK(rel_err(f, rec.signal) < 1e-4);
    CHECK(rec.residual_estimate < 1e-3);
}

TEST_CASE("istft rejects too-coarse synthesis grids") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    const PhaseSpaceGrid coarse = PhaseSpaceGrid::centered(16, 1.0, 16, 1.0);
    PhaseSpaceFunction F = PhaseSpaceFunction::zero(coarse);
    CHECK_THROWS_AS((void)istft(F, phi), std::invalid_argument);
}

TEST_CASE("wigner of the gaussian is the phase-space gaussian") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    const PhaseSpaceGrid ps = default_psgrid(64, 4.0);
    const PhaseSpaceFunction W = wigner(phi, phi, ps);
    double dev = 0.0;
    for (int ix = 0; ix < ps.Nx; ++ix)
        for (int iw = 0; iw < ps.Nw; ++iw) {
            const double x = ps.xval(ix), w = ps.wval(iw);
            const double want = 2.0 * std::exp(-kTwoPi * (x * x + w * w));
            dev = std::max(dev, std::abs(W.at(ix, iw) - want));
        }
    CHECK(dev < 1e-8);
}

TEST_CASE("wigner marginal in omega recovers |f|^2") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    const PhaseSpaceGrid qg = quantization_grid(g);
    const PhaseSpaceFunction W = wigner(phi, phi, qg);
    // sum over omega * dw = |f(x)|^2 at the x nodes
    double dev = 0.0;
    for (int ix = 0; ix < qg.Nx; ix += 7) {
        cdouble s = 0.0;
        for (int iw = 0; iw < qg.Nw; ++iw) s += W.at(ix, iw);
        s *= qg.dw;
        FourierEvaluator ev(phi);
        const double want = std::norm(ev(qg.xval(ix)));
        dev = std::max(dev, std::abs(s - want));
    }
    CHECK(dev < 1e-8);
}

TEST_CASE("moyal identity on the quantization grid") {
    const GridSpec g = small_grid();
    const PhaseSpaceGrid qg = quantization_grid(g);
    const SampledSignal f = random_signal(g, 21);
    const SampledSignal u = random_signal(g, 22);
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    const PhaseSpaceFunction W1 = wigner(f, phi, qg);
    const PhaseSpaceFunction W2 = wigner(u, phi, qg);
    cdouble lhs = 0.0;
    for (size_t i = 0; i < W1.values.size(); ++i)
        lhs += W1.values[i] * std::conj(W2.values[i]);
    // the midpoint-sampled discrete Wigner function double-covers phase space
    // (x and u subgrids of matching parity), so the discrete Moyal pairing
    // carries a factor 2 relative to the continuum identity
    lhs *= qg.cell() / 2.0;
    const cdouble rhs = inner(f, u) * std::conj(inner(phi, phi));
    CHECK(std::abs(lhs - rhs) < 1e-8);
}

TEST_CASE("fourier evaluator reproduces samples and half-grid upsampling") {
    const GridSpec g = small_grid();
    const SampledSignal f = random_signal(g, 31);
    FourierEvaluator ev(f);
    for (int n : {0, 1, 100, 255})
        CHECK(std::abs(ev(g.time(n)) - f.samples[n]) < 1e-10);
    const SampledSignal f2 = upsample2(f);
    for (int n : {1, 51, 333})
        CHECK(std::abs(ev(f2.grid.time(n)) - f2.samples[n]) < 1e-10);
}

TEST_CASE("reverse flips the time axis on the symmetric grid") {
    const GridSpec g = small_grid();
    const SampledSignal f = random_signal(g, 41);
    const SampledSignal r = reverse(f);
    FourierEvaluator ev(f);
    for (int n : {0, 3, 128, 200})
        CHECK(std::abs(r.samples[n] - ev(-g.time(n))) < 1e-10);
}
