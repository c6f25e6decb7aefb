#include "gspec/tfcore.hpp"

#include <algorithm>
#include <cmath>

#include "gspec/fft.hpp"

namespace gspec {

namespace {

cdouble cis(double phase) { return cdouble(std::cos(phase), std::sin(phase)); }

// True if w*T is an integer for every grid frequency, i.e. the psgrid
// frequencies sit on DFT bins of the signal grid.
bool bins_aligned(const PhaseSpaceGrid& ps, double T, double factor, std::vector<int>& idx) {
    idx.resize(ps.Nw);
    for (int k = 0; k < ps.Nw; ++k) {
        double j = factor * ps.wval(k) * T;
        double r = std::round(j);
        if (std::abs(j - r) > 1e-9) return false;
        idx[k] = (int)r;
    }
    return true;
}

}  // namespace

WindowSpec parse_window_kind(const std::string& name) {
    if (name == "gaussian") return WindowSpec::gaussian();
    if (name == "raised_cosine") return WindowSpec::raised_cosine();
    if (name.rfind("hermite", 0) == 0) {
        int n = 0;
        if (name.size() > 7) {
            size_t a = name.find('(');
            size_t b = name.find(')');
            if (a == std::string::npos || b == std::string::npos || b <= a + 1)
                throw std::invalid_argument("make_window: bad hermite spec '" + name + "'");
            n = std::stoi(name.substr(a + 1, b - a - 1));
        }
        if (n < 0) throw std::invalid_argument("make_window: hermite order must be >= 0");
        return WindowSpec::hermite(n);
    }
    throw std::invalid_argument("make_window: unknown window kind '" + name + "'");
}

SampledSignal make_window(const WindowSpec& spec, const GridSpec& grid) {
    std::vector<cdouble> s(grid.L);
    switch (spec.kind) {
        case WindowSpec::Kind::gaussian: {
            const double c = std::pow(2.0, 0.25);
            for (int n = 0; n < grid.L; ++n) {
                double t = grid.time(n);
                s[n] = c * std::exp(-kPi * t * t);
            }
            break;
        }
        case WindowSpec::Kind::hermite: {
            // Orthonormal Hermite functions in the sqrt(2*pi)-scaled variable;
            // discrete renormalization below fixes residual truncation error.
            const int N = spec.hermite_n;
            for (int n = 0; n < grid.L; ++n) {
                double x = std::sqrt(kTwoPi) * grid.time(n);
                double w = std::exp(-0.5 * x * x) / std::pow(kPi, 0.25);
                double pm1 = 0.0, p = w;
                for (int j = 1; j <= N; ++j) {
                    double next = x * std::sqrt(2.0 / j) * p - std::sqrt((j - 1.0) / j) * pm1;
                    pm1 = p;
                    p = next;
                }
                s[n] = p;
            }
            break;
        }
        case WindowSpec::Kind::raised_cosine: {
            const double w = spec.rc_width;
            if (!(w > 0.0)) throw std::invalid_argument("make_window: raised_cosine width must be > 0");
            for (int n = 0; n < grid.L; ++n) {
                double t = grid.time(n);
                s[n] = std::abs(t) <= w ? 0.5 * (1.0 + std::cos(kPi * t / w)) : 0.0;
            }
            break;
        }
        case WindowSpec::Kind::custom: {
            if ((int)spec.custom_samples.size() != grid.L)
                throw std::invalid_argument("make_window: custom sample count != grid.L");
            s = spec.custom_samples;
            break;
        }
    }
    SampledSignal sig(grid, std::move(s));
    double nrm = norm2(sig);
    if (!(nrm > 0.0)) throw std::invalid_argument("make_window: window has zero norm");
    for (auto& v : sig.samples) v /= nrm;
    return sig;
}

cdouble inner(const SampledSignal& f, const SampledSignal& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("inner: incompatible grids");
    cdouble acc(0.0, 0.0);
    for (int n = 0; n < f.grid.L; ++n) acc += f.samples[n] * std::conj(g.samples[n]);
    return acc * f.grid.dt;
}

double norm2(const SampledSignal& f) {
    double acc = 0.0;
    for (const auto& v : f.samples) acc += std::norm(v);
    return std::sqrt(acc * f.grid.dt);
}

SampledSignal scale(const SampledSignal& f, cdouble c) {
    SampledSignal out = f;
    for (auto& v : out.samples) v *= c;
    return out;
}

SampledSignal add(const SampledSignal& f, const SampledSignal& g, double wf, double wg) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("add: incompatible grids");
    SampledSignal out = f;
    for (int n = 0; n < f.grid.L; ++n) out.samples[n] = wf * f.samples[n] + wg * g.samples[n];
    return out;
}

SampledSignal normalized(const SampledSignal& f) {
    double n = norm2(f);
    if (!(n > 0.0)) throw std::invalid_argument("normalized: zero signal");
    return scale(f, 1.0 / n);
}

SampledSignal translate(const SampledSignal& f, double x) {
    if (x == 0.0) return f;
    const int L = f.grid.L;
    std::vector<cdouble> F = fft_copy(f.samples, -1);
    const double T = f.grid.period();
    for (int k = 0; k < L; ++k) {
        int s = signed_bin(k, L);
        F[k] *= cis(-kTwoPi * s * x / T);
    }
    fft(F, +1);
    for (auto& v : F) v /= (double)L;
    return SampledSignal(f.grid, std::move(F));
}

SampledSignal modulate(const SampledSignal& f, double omega) {
    SampledSignal out = f;
    for (int n = 0; n < f.grid.L; ++n) out.samples[n] *= cis(kTwoPi * omega * f.grid.time(n));
    return out;
}

SampledSignal tf_shift(const SampledSignal& f, const TFPoint& z) {
    return modulate(translate(f, z.x), z.omega);
}

SampledSignal reverse(const SampledSignal& f) {
    if (!f.grid.symmetric())
        throw std::invalid_argument("reverse: grid must be symmetric (t0 = -L*dt/2)");
    const int L = f.grid.L;
    std::vector<cdouble> out(L);
    for (int n = 0; n < L; ++n) out[n] = f.samples[(L - n) % L];
    return SampledSignal(f.grid, std::move(out));
}

SampledSignal upsample2(const SampledSignal& f) {
    const int L = f.grid.L;
    std::vector<cdouble> F = fft_copy(f.samples, -1);
    std::vector<cdouble> G(2 * L, cdouble(0.0, 0.0));
    for (int k = 0; k < L; ++k) {
        int s = signed_bin(k, L);
        G[(s + 2 * L) % (2 * L)] = F[k];
    }
    fft(G, +1);
    for (auto& v : G) v /= (double)L;
    return SampledSignal(GridSpec(2 * L, 0.5 * f.grid.dt, f.grid.t0), std::move(G));
}

FourierEvaluator::FourierEvaluator(const SampledSignal& f)
    : grid_(f.grid), coeffs_(fft_copy(f.samples, -1)) {
    for (auto& c : coeffs_) c /= (double)grid_.L;
}

cdouble FourierEvaluator::operator()(double t) const {
    const int L = grid_.L;
    const double T = grid_.period();
    cdouble acc(0.0, 0.0);
    const double phase0 = kTwoPi * (t - grid_.t0) / T;
    for (int k = 0; k < L; ++k) {
        int s = signed_bin(k, L);
        acc += coeffs_[k] * cis(phase0 * s);
    }
    return acc;
}

PhaseSpaceFunction stft(const SampledSignal& f, const SampledSignal& g,
                        const PhaseSpaceGrid& psgrid) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("stft: incompatible grids");
    const int L = f.grid.L;
    const double T = f.grid.period();
    const double dt = f.grid.dt;
    PhaseSpaceFunction out = PhaseSpaceFunction::zero(psgrid);

    std::vector<int> bins;
    const bool fast = bins_aligned(psgrid, T, 1.0, bins);

    std::vector<cdouble> colphase(psgrid.Nw);
    for (int k = 0; k < psgrid.Nw; ++k)
        colphase[k] = cis(-kTwoPi * psgrid.wval(k) * f.grid.t0);

    std::vector<cdouble> p(L);
    for (int m = 0; m < psgrid.Nx; ++m) {
        SampledSignal gx = translate(g, psgrid.xval(m));
        for (int n = 0; n < L; ++n) p[n] = f.samples[n] * std::conj(gx.samples[n]);
        if (fast) {
            fft(p, -1);
            for (int k = 0; k < psgrid.Nw; ++k) {
                int j = ((bins[k] % L) + L) % L;
                out.at(m, k) = dt * colphase[k] * p[j];
            }
            fft(p, +1);
            for (auto& v : p) v /= (double)L;
        } else {
            for (int k = 0; k < psgrid.Nw; ++k) {
                const double w = psgrid.wval(k);
                cdouble acc(0.0, 0.0);
                for (int n = 0; n < L; ++n) acc += p[n] * cis(-kTwoPi * w * f.grid.time(n));
                out.at(m, k) = dt * acc;
            }
        }
    }
    return out;
}

cdouble stft_point(const SampledSignal& f, const SampledSignal& g, const TFPoint& z) {
    return inner(f, tf_shift(g, z));
}

IstftResult istft(const PhaseSpaceFunction& F, const SampledSignal& g) {
    const PhaseSpaceGrid& ps = F.psgrid;
    const int L = g.grid.L;
    const double T = g.grid.period();
    if (ps.cell() > 0.25 + 1e-12)
        throw std::invalid_argument("istft: psgrid too coarse (dx*dw must be <= 1/4)");

    std::vector<int> bins;
    const bool fast = bins_aligned(ps, T, 1.0, bins);

    std::vector<cdouble> acc(L, cdouble(0.0, 0.0));
    std::vector<cdouble> col(L);
    const double cell = ps.cell();
    double Fnorm2 = 0.0;

    for (int m = 0; m < ps.Nx; ++m) {
        // s_m(t) = sum_k F(m,k) e^{2 pi i w_k t}
        if (fast) {
            std::fill(col.begin(), col.end(), cdouble(0.0, 0.0));
            for (int k = 0; k < ps.Nw; ++k) {
                int j = ((bins[k] % L) + L) % L;
                col[j] += F.at(m, k) * cis(kTwoPi * ps.wval(k) * g.grid.t0);
                Fnorm2 += std::norm(F.at(m, k));
            }
            fft(col, +1);
        } else {
            for (int n = 0; n < L; ++n) {
                cdouble s(0.0, 0.0);
                const double t = g.grid.time(n);
                for (int k = 0; k < ps.Nw; ++k) s += F.at(m, k) * cis(kTwoPi * ps.wval(k) * t);
                col[n] = s;
            }
            for (int k = 0; k < ps.Nw; ++k) Fnorm2 += std::norm(F.at(m, k));
        }
        SampledSignal gx = translate(g, ps.xval(m));
        for (int n = 0; n < L; ++n) acc[n] += cell * col[n] * gx.samples[n];
    }

    SampledSignal outsig(g.grid, std::move(acc));
    double fnorm = std::sqrt(Fnorm2 * cell);
    double snorm = norm2(outsig);
    double residual = fnorm > 0.0 ? std::abs(fnorm - snorm) / fnorm : 0.0;
    return IstftResult{std::move(outsig), residual};
}

PhaseSpaceFunction wigner(const SampledSignal& f, const SampledSignal& g,
                          const PhaseSpaceGrid& psgrid) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("wigner: incompatible grids");
    if (!f.grid.symmetric())
        throw std::invalid_argument("wigner: grid must be symmetric (t0 = -L*dt/2)");
    const double T = f.grid.period();

    SampledSignal f2 = upsample2(f);
    SampledSignal g2 = upsample2(g);
    const int M = f2.grid.L;  // 2L
    const double du = f2.grid.dt;

    std::vector<int> bins;
    const bool fast = bins_aligned(psgrid, T, 2.0, bins);

    PhaseSpaceFunction out = PhaseSpaceFunction::zero(psgrid);
    std::vector<cdouble> p(M);
    for (int m = 0; m < psgrid.Nx; ++m) {
        const double x = psgrid.xval(m);
        SampledSignal a = translate(f2, -x);           // f(x + u)
        SampledSignal b = reverse(translate(g2, -x));  // g(x - u)
        for (int n = 0; n < M; ++n) p[n] = a.samples[n] * std::conj(b.samples[n]);
        if (fast) {
            fft(p, -1);
            for (int k = 0; k < psgrid.Nw; ++k) {
                int j = ((bins[k] % M) + M) % M;
                out.at(m, k) = 2.0 * du * cis(-kTwoPi * 2.0 * psgrid.wval(k) * f2.grid.t0) * p[j];
            }
        } else {
            for (int k = 0; k < psgrid.Nw; ++k) {
                const double w = psgrid.wval(k);
                cdouble acc(0.0, 0.0);
                for (int n = 0; n < M; ++n) acc += p[n] * cis(-2.0 * kTwoPi * w * f2.grid.time(n));
                out.at(m, k) = 2.0 * du * acc;
            }
        }
    }
    return out;
}

PhaseSpaceGrid quantization_grid(const GridSpec& grid) {
    if (!grid.symmetric())
        throw std::invalid_argument("quantization_grid: grid must be symmetric");
    const int L = grid.L;
    // x at the midpoints (spacing dt/2); omega covers one Nyquist band at
    // spacing 1/(2T).  The doubled omega resolution makes the quantization
    // comb select u = 0 only, so quantize(wigner(f, g)) = f g* exactly with
    // no half-period wrap term.
    return PhaseSpaceGrid::centered(2 * L, 0.5 * grid.dt, 2 * L, 0.5 / grid.period());
}

PhaseSpaceGrid default_psgrid(int n, double halfwidth) {
    return PhaseSpaceGrid::centered(n, 2.0 * halfwidth / n, n, 2.0 * halfwidth / n);
}

}  // namespace gspec
