#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gspec/types.hpp"

namespace gspec {

struct WindowSpec {
    enum class Kind { gaussian, hermite, raised_cosine, custom };
    Kind kind = Kind::gaussian;
    int hermite_n = 0;
    double rc_width = 2.0;
    std::vector<cdouble> custom_samples;

    static WindowSpec gaussian() { return WindowSpec{}; }
    static WindowSpec hermite(int n) {
        WindowSpec w;
        w.kind = Kind::hermite;
        w.hermite_n = n;
        return w;
    }
    static WindowSpec raised_cosine(double width = 2.0) {
        WindowSpec w;
        w.kind = Kind::raised_cosine;
        w.rc_width = width;
        return w;
    }
    static WindowSpec custom(std::vector<cdouble> samples) {
        WindowSpec w;
        w.kind = Kind::custom;
        w.custom_samples = std::move(samples);
        return w;
    }
};

WindowSpec parse_window_kind(const std::string& name);

/// Unit L^2-norm window samples.
SampledSignal make_window(const WindowSpec& spec, const GridSpec& grid);

cdouble inner(const SampledSignal& f, const SampledSignal& g);
double norm2(const SampledSignal& f);

SampledSignal scale(const SampledSignal& f, cdouble c);
SampledSignal add(const SampledSignal& f, const SampledSignal& g, double wf = 1.0, double wg = 1.0);
SampledSignal normalized(const SampledSignal& f);

/// T_x f = f(. - x); fractional x via frequency-domain phase ramp.
SampledSignal translate(const SampledSignal& f, double x);
/// M_w f = e^{2 pi i w t} f(t).
SampledSignal modulate(const SampledSignal& f, double omega);
/// pi(z) f = M_omega T_x f.
SampledSignal tf_shift(const SampledSignal& f, const TFPoint& z);

/// f(-t) on a symmetric grid.
SampledSignal reverse(const SampledSignal& f);
/// Band-limited 2x upsampling onto the dt/2 grid with the same box.
SampledSignal upsample2(const SampledSignal& f);

/// Band-limited point evaluation of a periodic sampled signal.
class FourierEvaluator {
   public:
    explicit FourierEvaluator(const SampledSignal& f);
    cdouble operator()(double t) const;

   private:
    GridSpec grid_;
    std::vector<cdouble> coeffs_;  // signed-bin Fourier coefficients / L
};

/// V_g f(x_m, w_k) = <f, pi(x_m, w_k) g> on psgrid.
PhaseSpaceFunction stft(const SampledSignal& f, const SampledSignal& g,
                        const PhaseSpaceGrid& psgrid);

/// Single-point STFT sample <f, pi(z) g>.
cdouble stft_point(const SampledSignal& f, const SampledSignal& g, const TFPoint& z);

struct IstftResult {
    SampledSignal signal;
    double residual_estimate;
};

/// Riemann-sum synthesis sum F(z) pi(z) g dx dw.
IstftResult istft(const PhaseSpaceFunction& F, const SampledSignal& g);

/// Cross-Wigner distribution W(f, g) on psgrid (symmetric GridSpec required).
PhaseSpaceFunction wigner(const SampledSignal& f, const SampledSignal& g,
                          const PhaseSpaceGrid& psgrid);

/// Phase-space grid on which weyl_quantize is exact for band-limited
/// signals: x at dt/2 spacing over the box, omega the full Nyquist band
/// at 1/(L dt) spacing (2L x 2L).
PhaseSpaceGrid quantization_grid(const GridSpec& grid);

/// Default analysis grid for norms and reconstruction tests.
PhaseSpaceGrid default_psgrid(int n = 512, double halfwidth = 8.0);

}  // namespace gspec
