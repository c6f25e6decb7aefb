#include "gspec/corpus.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "gspec/fft.hpp"
#include "gspec/tfcore.hpp"

namespace gspec {

namespace {

double rolloff(double r, double start, double width) {
    if (r <= start) return 1.0;
    const double u = (r - start) / width;
    return std::exp(-kPi * u * u);
}

}  // namespace

SampledSignal designed_window(const GridSpec& grid, double beta,
                              bool decay_radial, double rolloff_start,
                              double rolloff_width) {
    if (!(beta > 2.0))
        throw std::invalid_argument("designed_window: beta must exceed 2");
    const double half = std::min(0.5 * grid.period(), grid.nyquist());
    if (!(rolloff_start + rolloff_width < half))
        throw std::invalid_argument("designed_window: rolloff exceeds the box");
    const PhaseSpaceGrid ps = default_psgrid(512, half);
    PhaseSpaceFunction env = PhaseSpaceFunction::zero(ps);
    for (int ix = 0; ix < ps.Nx; ++ix)
        for (int iw = 0; iw < ps.Nw; ++iw) {
            const double x = ps.xval(ix), w = ps.wval(iw);
            double e;
            if (decay_radial) {
                const double r = std::hypot(x, w);
                e = std::pow(1.0 + r, -beta) * rolloff(r, rolloff_start, rolloff_width);
            } else {
                e = std::exp(-kPi * x * x) * std::pow(1.0 + std::abs(w), -beta) *
                    rolloff(std::abs(w), rolloff_start, rolloff_width);
            }
            env.values[static_cast<size_t>(ix) * ps.Nw + iw] = e;
        }
    const SampledSignal phi = make_window(WindowSpec::gaussian(), grid);
    return normalized(istft(env, phi).signal);
}

SampledSignal class_window(const GridSpec& grid, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("class_window: s must be positive");
    if (s >= 2.0) return make_window(WindowSpec::gaussian(), grid);
    return designed_window(grid, 2.0 * s + 2.2, /*decay_radial=*/true);
}

SampledSignal random_signal(const GridSpec& grid, unsigned seed, double band_frac) {
    if (!(band_frac > 0.0 && band_frac <= 1.0))
        throw std::invalid_argument("random_signal: band_frac must be in (0, 1]");
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int L = grid.L;
    std::vector<cdouble> spec(L, 0.0);
    const double cutoff = band_frac * grid.nyquist();
    const double dw = 1.0 / grid.period();
    for (int k = 0; k < L; ++k) {
        const double w = signed_bin(k, L) * dw;
        if (std::abs(w) > cutoff) continue;
        const double taper = std::exp(-2.0 * (w / cutoff) * (w / cutoff));
        spec[k] = cdouble(gauss(rng), gauss(rng)) * taper;
    }
    fft(spec, +1);
    SampledSignal out = SampledSignal::zero(grid);
    out.samples = std::move(spec);
    return normalized(out);
}

PhaseSpaceFunction random_symbol(const PhaseSpaceGrid& psgrid, unsigned seed,
                                 int bumps, double width) {
    if (bumps < 1) throw std::invalid_argument("random_symbol: need at least one bump");
    std::mt19937 rng(seed);
    const double hx = 0.5 * psgrid.Nx * psgrid.dx;
    const double hw = 0.5 * psgrid.Nw * psgrid.dw;
    std::uniform_real_distribution<double> ux(-0.5 * hx, 0.5 * hx);
    std::uniform_real_distribution<double> uw(-0.5 * hw, 0.5 * hw);
    std::uniform_real_distribution<double> ua(0.2, 1.0);
    PhaseSpaceFunction out = PhaseSpaceFunction::zero(psgrid);
    for (int bump = 0; bump < bumps; ++bump) {
        const double cx = ux(rng), cw = uw(rng), amp = ua(rng);
        for (int ix = 0; ix < psgrid.Nx; ++ix)
            for (int iw = 0; iw < psgrid.Nw; ++iw) {
                const double dx = psgrid.xval(ix) - cx;
                const double dw = psgrid.wval(iw) - cw;
                out.values[static_cast<size_t>(ix) * psgrid.Nw + iw] +=
                    amp * std::exp(-(dx * dx + dw * dw) / (2.0 * width * width));
            }
    }
    return out;
}

}  // namespace gspec
