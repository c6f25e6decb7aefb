#pragma once

#include <limits>
#include <string>
#include <vector>

#include "gspec/tfcore.hpp"
#include "gspec/types.hpp"

namespace gspec {

/// p/q exponent value standing for infinity.
inline constexpr int kPInf = std::numeric_limits<int>::max();

struct MixedNormParams {
    int p = 2;
    int q = 2;
    double s = 0.0;  // weight exponent on position, (1+|x|)^s
    double t = 0.0;  // weight exponent on frequency, (1+|omega|)^t
};

enum class Region { frequency_band, phase_space_ball };

std::string region_name(Region r);
Region parse_region(const std::string& name);

struct ApproxParams {
    double a;
    double b;
    double c;
    double epsilon;
    Region region;
    double radius() const { return 1.0 / epsilon - 1.0; }
};

/// Weighted mixed norm of V_phi f sampled on psgrid. Throws CoverageError
/// if the boundary ring holds more than coverage_tol of the weighted mass.
double mixed_norm_signal(const SampledSignal& f, const MixedNormParams& prm,
                         const PhaseSpaceGrid& psgrid,
                         double coverage_tol = 1e-6);

struct SymbolNormOptions {
    int n4 = 32;        // points per axis of the 4-d STFT grid
    double wmax = 4.0;  // frequency half-width per axis
};

/// Modulation norm of a symbol F (function on phase space) via a coarse
/// separable 4-d STFT with a 2-d Gaussian window. Supports (p,q) in
/// {(inf,1), (1,1)}.
double mixed_norm_symbol(const PhaseSpaceFunction& F, const MixedNormParams& prm,
                         const SymbolNormOptions& opts = {});

/// D_a f(x) = f(a x), band-limited periodic evaluation; a in [1/4, 4].
SampledSignal dilate_signal(const SampledSignal& f, double a);
PhaseSpaceFunction dilate_symbol(const PhaseSpaceFunction& F, double a);

/// h = istft( chi_Omega . V_phi g, phi ) with Omega of radius 1/eps - 1
/// (a frequency band or a phase-space ball).
SampledSignal truncate_approx(const SampledSignal& g, const ApproxParams& prm,
                              const PhaseSpaceGrid& psgrid);

PhaseSpaceGrid default_truncation_grid(const GridSpec& grid);

struct TradeoffRow {
    double epsilon;
    Region region;
    double err_norm_a;  // ||g - h|| in the level-a norm
    double h_norm_c;    // ||h|| in the level-c norm
};

struct TradeoffTable {
    std::vector<TradeoffRow> rows;
    double slope_err_band;      // log-log slope of err vs eps, region (i)
    double slope_growth_band;   // log-log slope of growth vs eps, region (i)
    double slope_err_ball;
    double slope_growth_ball;
};

/// Runs truncate_approx over eps_list for both regions and fits the
/// error/growth exponents.
TradeoffTable tradeoff_table(const SampledSignal& g, double a, double b, double c,
                             const std::vector<double>& eps_list,
                             const PhaseSpaceGrid& psgrid);

}  // namespace gspec
