#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gspec/corpus.hpp"
#include "gspec/gabor.hpp"
#include "gspec/tfcore.hpp"
#include "gspec/weyl.hpp"
#include "helpers.hpp"

using namespace gspec;
using gspec::testing::small_grid;

namespace {

// Independent O(n^3) oracle: count points in every half-open unit square
// anchored at a pair of point coordinates.
int rel_bruteforce(const AtomSet& atoms) {
    const auto& p = atoms.points;
    int best = p.empty() ? 0 : 1;
    for (const auto& ax : p)
        for (const auto& aw : p) {
            int cnt = 0;
            for (const auto& z : p)
                if (z.x >= ax.x && z.x < ax.x + 1.0 && z.omega >= aw.omega &&
                    z.omega < aw.omega + 1.0)
                    ++cnt;
            best = std::max(best, cnt);
        }
    return best;
}

}  // namespace

TEST_CASE("rel of lattices") {
    const PhaseSpaceBox box{6.0, 6.0};
    CHECK(rel_separation(lattice_patch(1.0, box)) == 1);
    CHECK(rel_separation(lattice_patch(0.5, box)) == 4);
    CHECK(rel_separation(lattice_patch(1.5, box)) == 1);
    CHECK(rel_separation(dilate_set(lattice_patch(1.0, box), 0.5)) == 4);
}

TEST_CASE("rel matches the brute-force oracle on jittered and random sets") {
    const PhaseSpaceBox box{4.0, 4.0};
    for (unsigned seed : {1u, 2u, 3u, 4u}) {
        const AtomSet jit = jittered_patch(0.8, box, 0.3, seed);
        CHECK(rel_separation(jit) == rel_bruteforce(jit));
        const AtomSet rnd = random_separated(40, 0.4, box, seed);
        CHECK(rel_separation(rnd) == rel_bruteforce(rnd));
    }
}

TEST_CASE("random_separated respects the minimum distance") {
    const AtomSet s = random_separated(60, 0.5, PhaseSpaceBox{5.0, 5.0}, 12);
    REQUIRE(s.points.size() == 60);
    double dmin = 1e9;
    for (size_t i = 0; i < s.points.size(); ++i)
        for (size_t j = i + 1; j < s.points.size(); ++j)
            dmin = std::min(dmin, std::hypot(s.points[i].x - s.points[j].x,
                                             s.points[i].omega - s.points[j].omega));
    CHECK(dmin >= 0.5);
}

TEST_CASE("single-atom frame operator is the shifted rank-one projector") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    AtomSet one;
    one.points.push_back(TFPoint{0.75, -1.25});
    const OperatorMatrix S = frame_operator(phi, phi, one, g);
    const SampledSignal shifted = tf_shift(phi, one.points[0]);
    CHECK((S.entries - rank_one(shifted, shifted)).cwiseAbs().maxCoeff() < 1e-12);
    const SpectralEdges e = spectral_edges(S);
    CHECK(e.sigma_plus == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(e.sigma_minus) < 1e-10);
}

TEST_CASE("frame operator is Hermitian and positive semidefinite") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    const AtomSet atoms = jittered_patch(1.2, PhaseSpaceBox::natural(g), 0.4, 5);
    const OperatorMatrix S = frame_operator(phi, phi, atoms, g);
    CHECK(S.hermitian_ok());
    CHECK(spectral_edges(S).sigma_minus > -1e-10);
}

TEST_CASE("adding atoms raises both spectral edges") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    AtomSet base = lattice_patch(1.0, PhaseSpaceBox{3.0, 3.0});
    AtomSet more = base;
    more.points.push_back(TFPoint{0.33, 0.41});
    more.points.push_back(TFPoint{-1.2, 2.2});
    const SpectralEdges e1 = spectral_edges(frame_operator(phi, phi, base, g));
    const SpectralEdges e2 = spectral_edges(frame_operator(phi, phi, more, g));
    CHECK(e2.sigma_plus >= e1.sigma_plus - 1e-10);
    CHECK(e2.sigma_minus >= e1.sigma_minus - 1e-10);
}

TEST_CASE("frame bounds are covariant under a common time-frequency shift") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    AtomSet atoms = lattice_patch(1.0, PhaseSpaceBox{3.0, 3.0});
    AtomSet shifted = atoms;
    for (auto& z : shifted.points) {
        z.x += 0.5;
        z.omega += 0.25;
    }
    const SpectralEdges e1 = spectral_edges(frame_operator(phi, phi, atoms, g));
    const SpectralEdges e2 = spectral_edges(frame_operator(phi, phi, shifted, g));
    CHECK(e1.sigma_plus == doctest::Approx(e2.sigma_plus).epsilon(1e-9));
    CHECK(e1.sigma_minus == doctest::Approx(e2.sigma_minus).epsilon(1e-9));
}

TEST_CASE("heavily oversampled gaussian lattice is numerically tight") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    const FrameBounds fb =
        frame_bounds(phi, lattice_patch(0.25, PhaseSpaceBox::natural(g)), g);
    // density 16: S approaches 16 I
    CHECK(fb.A == doctest::Approx(16.0).epsilon(1e-6));
    CHECK(fb.B / fb.A - 1.0 < 1e-8);
}

TEST_CASE("frame symbol quantizes back to the frame operator") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    const AtomSet atoms =
        jittered_patch(2.0, PhaseSpaceBox::natural(g), 0.5, 8);
    const OperatorMatrix S = frame_operator(phi, phi, atoms, g);
    const PhaseSpaceFunction sym =
        frame_symbol(phi, phi, atoms, 0.0, quantization_grid(g));
    const OperatorMatrix S2 = weyl_quantize(sym, g);
    const double rel =
        operator_norm(Eigen::MatrixXcd(S.entries - S2.entries)) / operator_norm(S);
    CHECK(rel < 1e-6);
}

TEST_CASE("zak oracle matches the dense model on the half-integer lattice") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    const FrameBounds dense =
        frame_bounds(phi, lattice_patch(0.5, PhaseSpaceBox::natural(g)), g);
    const FrameBounds zak = zak_lattice_bounds(phi, 1, 2, 32);
    CHECK(std::abs(dense.A - zak.A) / zak.B < 1e-2);
    CHECK(std::abs(dense.B - zak.B) / zak.B < 1e-2);
}

TEST_CASE("zak oracle at the critical lattice has a vanishing lower bound") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    const FrameBounds fb = zak_lattice_bounds(phi, 1, 1, 16);
    CHECK(fb.A <= 1e-3 * fb.B);
    CHECK(fb.B > 1.0);
}

TEST_CASE("zak oracle is stable under fiber-resolution refinement") {
    const GridSpec g = small_grid();
    const SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    const FrameBounds c1 = zak_lattice_bounds(phi, 9, 10, 8);
    const FrameBounds c2 = zak_lattice_bounds(phi, 9, 10, 16);
    CHECK(std::abs(c1.B - c2.B) / c2.B < 1e-2);
    CHECK(std::abs(c1.A - c2.A) / c2.B < 1e-2);
}

TEST_CASE("snap_rational finds small-denominator approximations") {
    CHECK(snap_rational(0.9, 64) == std::pair<int, int>{9, 10});
    CHECK(snap_rational(1.0, 64) == std::pair<int, int>{1, 1});
    CHECK(snap_rational(0.875, 8) == std::pair<int, int>{7, 8});
    const auto [p, q] = snap_rational(0.93, 64);
    CHECK(std::abs(static_cast<double>(p) / q - 0.93) < 1e-2);
}

TEST_CASE("frame_bounds rejects non-normalized windows") {
    const GridSpec g = small_grid();
    SampledSignal phi = make_window(WindowSpec::gaussian(), g);
    phi = scale(phi, 2.0);
    CHECK_THROWS_AS(
        (void)frame_bounds(phi, lattice_patch(1.0, PhaseSpaceBox{3.0, 3.0}), g),
        std::invalid_argument);
}
