#pragma once

#include <vector>

#include "gspec/types.hpp"

namespace gspec {

/// Unit-norm window synthesized as istft of a designed envelope with
/// polynomial decay (1+|.|)^(-beta) and a smooth Gaussian rolloff that
/// kills the envelope before the box / Nyquist edge. decay_radial selects
/// between radial decay in |z| and decay in |omega| only.
SampledSignal designed_window(const GridSpec& grid, double beta,
                              bool decay_radial, double rolloff_start = 10.0,
                              double rolloff_width = 2.5);

/// Window of smoothness class s used by the deformation experiments:
/// Gaussian for s >= 2, otherwise a designed polynomial-decay window
/// with beta = 2 s + 2.2.
SampledSignal class_window(const GridSpec& grid, double s);

/// Random unit-norm band-limited signal (Gaussian spectrum taper).
SampledSignal random_signal(const GridSpec& grid, unsigned seed,
                            double band_frac = 0.5);

/// Random smooth real symbol: superposition of Gaussian bumps.
PhaseSpaceFunction random_symbol(const PhaseSpaceGrid& psgrid, unsigned seed,
                                 int bumps = 6, double width = 1.5);

}  // namespace gspec
