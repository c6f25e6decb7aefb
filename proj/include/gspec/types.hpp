#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace gspec {

using cdouble = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

/// Thrown when a phase-space grid does not cover the numerical support
/// of the quantity being integrated.
class CoverageError : public std::runtime_error {
   public:
    CoverageError(const std::string& msg, double boundary_fraction)
        : std::runtime_error(msg), boundary_fraction(boundary_fraction) {}
    double boundary_fraction;
};

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// Uniform periodic time grid: L samples of spacing dt starting at t0,
/// period L*dt.
struct GridSpec {
    int L;
    double dt;
    double t0;

    GridSpec(int L_, double dt_, double t0_) : L(L_), dt(dt_), t0(t0_) {
        if (!is_pow2(L)) throw std::invalid_argument("GridSpec: L must be a power of two");
        if (!(dt > 0.0)) throw std::invalid_argument("GridSpec: dt must be positive");
        if (L * dt < 8.0) throw std::invalid_argument("GridSpec: box L*dt must be >= 8");
        if (!std::isfinite(t0)) throw std::invalid_argument("GridSpec: t0 must be finite");
    }

    double period() const { return L * dt; }
    double time(int n) const { return t0 + n * dt; }
    double nyquist() const { return 0.5 / dt; }
    /// Symmetric grids (t0 == -L*dt/2) admit exact sample reversal.
    bool symmetric() const { return std::abs(t0 + 0.5 * L * dt) < 1e-12 * period(); }

    bool operator==(const GridSpec& o) const {
        return L == o.L && dt == o.dt && t0 == o.t0;
    }
};

/// Complex samples of a function on a GridSpec.
struct SampledSignal {
    GridSpec grid;
    std::vector<cdouble> samples;

    SampledSignal(GridSpec g, std::vector<cdouble> s)
        : grid(g), samples(std::move(s)) {
        if ((int)samples.size() != grid.L)
            throw std::invalid_argument("SampledSignal: sample count != grid.L");
        for (const auto& v : samples)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("SampledSignal: non-finite sample");
    }

    static SampledSignal zero(GridSpec g) {
        return SampledSignal(g, std::vector<cdouble>(g.L, cdouble(0.0, 0.0)));
    }
};

/// A point z = (x, omega) in phase space.
struct TFPoint {
    double x;
    double omega;

    TFPoint(double x_ = 0.0, double omega_ = 0.0) : x(x_), omega(omega_) {
        if (!std::isfinite(x) || !std::isfinite(omega))
            throw std::invalid_argument("TFPoint: non-finite coordinate");
    }
};

/// Uniform grid on a centered phase-space box [-X,X) x [-W,W).
struct PhaseSpaceGrid {
    int Nx, Nw;
    double dx, dw;
    double x0, w0;

    PhaseSpaceGrid(int Nx_, double dx_, int Nw_, double dw_, double x0_, double w0_)
        : Nx(Nx_), dx(dx_), Nw(Nw_), dw(dw_), x0(x0_), w0(w0_) {
        if (Nx <= 0 || Nw <= 0) throw std::invalid_argument("PhaseSpaceGrid: sizes must be positive");
        if (!(dx > 0.0) || !(dw > 0.0)) throw std::invalid_argument("PhaseSpaceGrid: steps must be positive");
        if (std::abs(x0 + 0.5 * Nx * dx) > 1e-9 || std::abs(w0 + 0.5 * Nw * dw) > 1e-9)
            throw std::invalid_argument("PhaseSpaceGrid: box must be centered");
    }

    static PhaseSpaceGrid centered(int Nx, double dx, int Nw, double dw) {
        return PhaseSpaceGrid(Nx, dx, Nw, dw, -0.5 * Nx * dx, -0.5 * Nw * dw);
    }

    double xval(int i) const { return x0 + i * dx; }
    double wval(int k) const { return w0 + k * dw; }
    double cell() const { return dx * dw; }
    std::size_t size() const { return (std::size_t)Nx * (std::size_t)Nw; }

    bool operator==(const PhaseSpaceGrid& o) const {
        return Nx == o.Nx && Nw == o.Nw && dx == o.dx && dw == o.dw && x0 == o.x0 && w0 == o.w0;
    }
};

/// Complex samples on a phase-space grid, row-major (x index outer).
struct PhaseSpaceFunction {
    PhaseSpaceGrid psgrid;
    std::vector<cdouble> values;

    PhaseSpaceFunction(PhaseSpaceGrid g, std::vector<cdouble> v)
        : psgrid(g), values(std::move(v)) {
        if (values.size() != psgrid.size())
            throw std::invalid_argument("PhaseSpaceFunction: value count != grid size");
        for (const auto& z : values)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw std::invalid_argument("PhaseSpaceFunction: non-finite value");
    }

    static PhaseSpaceFunction zero(PhaseSpaceGrid g) {
        return PhaseSpaceFunction(g, std::vector<cdouble>(g.size(), cdouble(0.0, 0.0)));
    }

    cdouble& at(int ix, int iw) { return values[(std::size_t)ix * psgrid.Nw + iw]; }
    const cdouble& at(int ix, int iw) const { return values[(std::size_t)ix * psgrid.Nw + iw]; }
};

int max_threads();
void set_max_threads(int n);

}  // namespace gspec
