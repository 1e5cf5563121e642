#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "geography/combinations.hpp"
#include "geography/linalg.hpp"
#include "geography/polytope.hpp"
#include "oracles.hpp"

using namespace geography;

namespace {

Rational q(long n, long d = 1) { return Rational(n) / d; }

HPolytope square()
{
    return HPolytope(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, 0}, -1}, {{0, -1}, -1}});
}

}  // namespace

TEST_CASE("rational parsing and printing")
{
    CHECK(parse_rational("3/6") == q(1, 2));
    CHECK(parse_rational(" -4 ") == q(-4));
    CHECK(to_string(q(2)) == "2/1");
    CHECK(to_string(q(-1, 3)) == "-1/3");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
}

TEST_CASE("determinants")
{
    CHECK(det_exact(QMatrix::identity(3)) == 1);
    CHECK(det_exact(QMatrix{{2, 3}, {1, 0}}) == -3);
    CHECK(det_exact(QMatrix{{1, 2}, {2, 4}}) == 0);
    CHECK(det_exact(QMatrix{{q(1, 2), q(1, 3)}, {q(1, 4), q(1, 5)}}) == q(1, 10) - q(1, 12));
    CHECK_THROWS_AS(det_exact(QMatrix(2, 3)), DimensionError);
}

TEST_CASE("determinant agrees with cofactor expansion on a sampled grid")
{
    std::mt19937_64 rng(7);
    for (std::size_t n = 1; n <= 4; ++n)
        for (int trial = 0; trial < 150; ++trial) {
            QMatrix a(n, n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    a(r, c) = static_cast<long>(rng() % 7) - 3;
            CHECK(det_exact(a) == oracle::cofactor_det(a));
        }
}

TEST_CASE("linear solving")
{
    auto s = solve_linear(QMatrix::identity(2), QVector{q(1, 2), q(1, 3)});
    REQUIRE(s.status == SolveStatus::unique);
    CHECK(s.x == QVector{q(1, 2), q(1, 3)});

    s = solve_linear(QMatrix{{2, 3}, {1, 0}}, QVector{1, 0});
    REQUIRE(s.status == SolveStatus::unique);
    CHECK(s.x == QVector{0, q(1, 3)});

    CHECK(solve_linear(QMatrix{{1, 2}, {2, 4}}, QVector{1, 3}).status == SolveStatus::no_solution);
    CHECK(solve_linear(QMatrix{{1, 2}, {2, 4}}, QVector{1, 2}).status == SolveStatus::degenerate);
}

TEST_CASE("solution denominators divide the determinant")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        QMatrix a(3, 3);
        QVector b(3);
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t c = 0; c < 3; ++c)
                a(r, c) = static_cast<long>(rng() % 9) - 4;
            b[r] = static_cast<long>(rng() % 9) - 4;
        }
        auto s = solve_linear(a, b);
        if (s.status != SolveStatus::unique)
            continue;
        Integer d = boost::multiprecision::abs(numerator(det_exact(a)));
        for (const auto& x : s.x)
            CHECK(d % denominator(x) == 0);
    }
}

TEST_CASE("inertia")
{
    auto i = inertia(QMatrix{{1, 0}, {0, -1}});
    CHECK(i.positive == 1);
    CHECK(i.negative == 1);
    CHECK(negative_definite(QMatrix{{-2, 1}, {1, -2}}));
    CHECK_FALSE(negative_definite(QMatrix{{-1, 2}, {2, -1}}));
    auto z = inertia(QMatrix{{0, 1}, {1, 0}});
    CHECK(z.positive == 1);
    CHECK(z.negative == 1);
}

TEST_CASE("vertex enumeration")
{
    auto v = enumerate_vertices(square()).vertices;
    CHECK(v == std::vector<QVector>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

    HPolytope simplex(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, -1}});
    CHECK(enumerate_vertices(simplex).vertices == std::vector<QVector>{{0, 0}, {0, 1}, {1, 0}});

    HPolytope cut(2, {{{2, 3}, 1}, {{1, 0}, 0}, {{-1, 0}, -1}, {{0, -1}, -1}});
    auto cv = enumerate_vertices(cut).vertices;
    CHECK(std::find(cv.begin(), cv.end(), QVector{0, q(1, 3)}) != cv.end());
    for (const auto& x : cv)
        CHECK(cut.contains(x));

    CHECK(enumerate_vertices(HPolytope::empty(2)).empty());
}

TEST_CASE("boundedness is verified on construction")
{
    CHECK_THROWS_AS(HPolytope(2, {{{1, 0}, 0}, {{0, 1}, 0}}), PreconditionError);
    HPolytope open(2, {{{1, 0}, 0}, {{0, 1}, 0}}, false);
    CHECK_THROWS_AS(enumerate_vertices(open), PreconditionError);
}

TEST_CASE("rational constraints are cleared to integers")
{
    auto h = HPolytope::from_rational(1, {{{q(1, 2)}, q(1, 3)}, {{-1}, -1}});
    CHECK(h.constraints()[0].normal == ZVector{3});
    CHECK(h.constraints()[0].bound == 2);
    CHECK(h.scale_factors()[0] == 6);
    CHECK(enumerate_vertices(h).vertices == std::vector<QVector>{{q(2, 3)}, {1}});
}

TEST_CASE("volume")
{
    CHECK(volume(square()) == 1);
    CHECK(volume(HPolytope(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, -1}})) == q(1, 2));
    CHECK(volume(HPolytope::unit_cube(3)) == 1);
    HPolytope corner(3, {{{1, 0, 0}, 0}, {{0, 1, 0}, 0}, {{0, 0, 1}, 0}, {{-1, -1, -1}, -1}});
    CHECK(volume(corner) == q(1, 6));
    auto box = HPolytope::box({0, 0, 0}, {q(1, 2), 2, 3});
    CHECK(volume(box) == 3);
}

TEST_CASE("H to V to H round trip on random point clouds")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t p = 2 + trial % 2;
        std::vector<QVector> pts;
        for (int i = 0; i < 7; ++i) {
            QVector x(p);
            for (auto& c : x)
                c = Rational(static_cast<long>(rng() % 9), 4);
            pts.push_back(x);
        }
        if (affine_dimension(pts) != static_cast<int>(p))
            continue;
        HPolytope h = hull_halfspaces(p, pts);
        auto verts = enumerate_vertices(h).vertices;
        // Vertices are a subset of the input and every input point is inside.
        for (const auto& v : verts)
            CHECK(std::find(pts.begin(), pts.end(), v) != pts.end());
        for (const auto& x : pts)
            CHECK(h.contains(x));
        HPolytope again = hull_halfspaces(p, verts);
        CHECK(enumerate_vertices(again).vertices == verts);
        // No vertex is a convex combination of the others.
        for (std::size_t i = 0; i < verts.size(); ++i) {
            std::vector<QVector> rest = verts;
            rest.erase(rest.begin() + static_cast<long>(i));
            if (affine_dimension(rest) == static_cast<int>(p))
                CHECK_FALSE(hull_halfspaces(p, rest).contains(verts[i]));
        }
    }
}

TEST_CASE("hull with rays")
{
    HPolytope up = hull_halfspaces(2, {{q(1, 2), q(1, 2)}}, {{1, 0}, {0, 1}});
    CHECK_FALSE(up.bounded());
    CHECK(up.contains(QVector{5, 5}));
    CHECK_FALSE(up.contains(QVector{0, 1}));
}

TEST_CASE("remove_redundant keeps only facets")
{
    HPolytope h = square().with({{1, 1}, -5}).with({{1, 0}, 0});
    CHECK(remove_redundant(h).constraints().size() == 4);
}

TEST_CASE("Hadamard bound values")
{
    CHECK(hadamard_m0(1, 1, q(1, 2)) == 1);
    CHECK(hadamard_m0(1, 2, q(1, 4)) == 7);
    CHECK(hadamard_m0(2, 2, q(1, 2)) == 98);
}

TEST_CASE("Hadamard bound dominates the 2x2 determinant search")
{
    // Entries range over [-2, 7]: every admissible matrix for p = 2, M = 2, eps = 1/2.
    Integer best = 0;
    for (int a = -2; a <= 7; ++a)
        for (int b = -2; b <= 7; ++b)
            for (int c = -2; c <= 7; ++c)
                for (int d = -2; d <= 7; ++d)
                    best = std::max(best, Integer(std::abs(a * d - b * c)));
    // The true maximum is 7·7 + 2·7; the Hadamard value 98 dominates it.
    CHECK(best == 63);
    CHECK(best <= hadamard_m0(2, 2, q(1, 2)));
}

TEST_CASE("denominator certificate")
{
    HPolytope unit(1, {{{1}, 0}, {{-1}, -1}});
    // |β| = 1 is not strictly below M = 1.
    CHECK_THROWS_AS(denominator_certificate(unit, 1, q(1, 2)), PreconditionError);
    auto c1 = denominator_certificate(unit, 2, q(1, 2));
    CHECK(c1.m0 == 3);
    REQUIRE(c1.vertices.size() == 1);
    CHECK(c1.vertices[0].vertex == QVector{1});
    CHECK(c1.certified);

    HPolytope half(1, {{{2}, 1}, {{-1}, -1}});
    auto c2 = denominator_certificate(half, 2, q(1, 4));
    CHECK(c2.m0 == 7);
    REQUIRE(c2.vertices.size() == 2);
    CHECK(c2.vertices[0].lcm_denominator == 2);
    CHECK(c2.vertices[0].divides);
    CHECK(c2.certified);

    CHECK_THROWS_AS(denominator_certificate(half, 1, q(1, 4)), PreconditionError);
    HPolytope steep(1, {{{-3}, -1}, {{1}, 0}});
    CHECK_THROWS_AS(denominator_certificate(steep, 2, q(1, 4)), PreconditionError);
    CHECK_THROWS_AS(denominator_certificate(unit, 1, 1), PreconditionError);
}

TEST_CASE("every vertex denominator divides an active determinant")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Halfspace> cs;
        for (std::size_t j = 0; j < 2; ++j) {
            ZVector e(2, Integer(0));
            e[j] = 1;
            cs.push_back({e, 0});
            e[j] = -1;
            cs.push_back({e, -1});
        }
        for (int i = 0; i < 3; ++i)
            cs.push_back({{static_cast<long>(rng() % 7) - 2, static_cast<long>(rng() % 7) - 2},
                          static_cast<long>(rng() % 5) - 2});
        HPolytope h(2, cs);
        auto cert = denominator_certificate(h, 5, q(1, 3));
        for (const auto& v : cert.vertices)
            CHECK(v.divides);
        CHECK(cert.certified);
    }
}

TEST_CASE("combinations visit every subset once")
{
    std::size_t n = 0;
    for_each_combination(6, 3, [&](const std::vector<std::size_t>&) {
        ++n;
        return true;
    });
    CHECK(n == 20);
}
