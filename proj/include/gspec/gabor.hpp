#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gspec/tfcore.hpp"
#include "gspec/types.hpp"
#include "gspec/weyl.hpp"

namespace gspec {

/// Centered phase-space box [-hx, hx) x [-hw, hw).
struct PhaseSpaceBox {
    double half_x;
    double half_w;
    bool contains(const TFPoint& z) const {
        return z.x >= -half_x && z.x < half_x && z.omega >= -half_w && z.omega < half_w;
    }
    static PhaseSpaceBox natural(const GridSpec& g) {
        return PhaseSpaceBox{0.5 * g.period(), g.nyquist()};
    }
};

struct AtomSet {
    std::vector<TFPoint> points;
    std::optional<PhaseSpaceBox> periodic_box;
};

struct FrameBounds {
    double A;
    double B;
    std::string method;
    std::string resolution;
};

/// rel(Lambda): max number of points in a half-open unit square.
int rel_separation(const AtomSet& atoms);

AtomSet dilate_set(const AtomSet& atoms, double alpha);
AtomSet crop_to_box(const AtomSet& atoms, const PhaseSpaceBox& box);

/// alpha Z^2 intersected with the box.
AtomSet lattice_patch(double alpha, const PhaseSpaceBox& box);
/// Lattice patch with i.i.d. uniform [0, jitter) offsets per coordinate.
AtomSet jittered_patch(double alpha, const PhaseSpaceBox& box, double jitter,
                       unsigned seed);
/// Rejection-sampled set with pairwise separation >= min_dist.
AtomSet random_separated(int count, double min_dist, const PhaseSpaceBox& box,
                         unsigned seed);

/// S_{g,h,Lambda} = sum_l (pi(l) h)(pi(l) g)^* dt as a dense matrix.
OperatorMatrix frame_operator(const SampledSignal& g, const SampledSignal& h,
                              const AtomSet& atoms, const GridSpec& grid);

/// G_delta = sum_l T_l D_{1/sqrt(1+delta)} W(h,g) on psgrid (delta = 0 gives
/// the Weyl symbol of S_{g,h,Lambda}).
PhaseSpaceFunction frame_symbol(const SampledSignal& g, const SampledSignal& h,
                                const AtomSet& atoms, double delta,
                                const PhaseSpaceGrid& psgrid);

FrameBounds frame_bounds(const SampledSignal& g, const AtomSet& atoms,
                         const GridSpec& grid);

/// Continuous-system oracle for G(g, (p/q) Z^2) via Zak-domain
/// fiberization of the Walnut representation; the fibers are
/// p^2 x p^2 matrices sampled res x res over the fundamental domain.
FrameBounds zak_lattice_bounds(const SampledSignal& g, int alpha_num,
                               int alpha_den, int res);

/// Nearest p/q to alpha with q <= qmax, in lowest terms.
std::pair<int, int> snap_rational(double alpha, int qmax);

}  // namespace gspec
