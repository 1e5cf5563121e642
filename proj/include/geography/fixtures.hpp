#pragma once

#include <cstdint>
#include <random>

#include "geography/surface.hpp"
#include "geography/valuations.hpp"

// Fixture models. Each lists every irreducible negative curve its
// computations depend on.
namespace geography::fixtures {

/// P² with a line L.
SurfaceModel projective_plane();

/// Bl_p P² in the basis (H, E): L = H - E through the point and E.
SurfaceModel blown_up_plane();

/// P² with a line L blown up at a point of L, then at L ∩ E1, and so on
/// `depth` times. The chain E1, ..., E_{depth-1} consists of (-2)-curves.
SurfaceModel iterated_blowup_plane(long depth);

/// Y with K_Y ample, A = f*K_Y, A² = k2, blown up once. Basis (A, E);
/// K = A + E and S = mA - sE, so S·E = s.
SurfaceModel example_one(long s = 5, long k2 = 2, long m = 0);

/// F_s in the basis (F, E) with E² = -s. Tracks E, a fibre F and the smooth
/// curve A = 4(E + sF) = f*A_Y, so K + A/2 + tE = (s - 2)F + tE.
SurfaceModel hirzebruch(long s = 8);

/// C × P¹ over a genus-g curve (section σ, fibres F1..Fr) blown up at one
/// point on each fibre Fi away from σ.
SurfaceModel ruled_census(long g, long r);

/// A quintic surface (K = H, K² = 5, χ = 5) tracking a hyperplane curve H,
/// blown up at r general points.
SurfaceModel quintic_census(long r);

struct RandomPair {
    PairConfig pair;
    std::vector<std::string> boundary;  // V, in boundary order
};

/// P² with four general lines and 2 or 3 random blow-ups at normal crossing
/// points of tracked curves, points on one curve, or free points. Lines get
/// coefficients in {3/4, 1}; exceptional curves k/4.
RandomPair random_rational_pair(std::mt19937_64& rng);

/// Two curves on a surface meeting in `points` points.
SNCConfig two_curves(const Rational& a1, const Rational& a2, long points = 1);

/// Three divisors on a threefold meeting pairwise along one curve each and
/// all three in one point.
SNCConfig triple_point(const Rational& a1, const Rational& a2, const Rational& a3);

}  // namespace geography::fixtures
