#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "geography/fixtures.hpp"
#include "geography/surface.hpp"
#include "oracles.hpp"

using namespace geography;

namespace {

Rational q(long n, long d = 1) { return Rational(n) / d; }

bool contains(const std::vector<std::string>& v, const std::string& s)
{
    return std::find(v.begin(), v.end(), s) != v.end();
}

QVector positive_class(const SurfaceModel& s)
{
    QVector h(s.rank, Rational(0));
    h[0] = 1;  // pullback of the hyperplane class on the random plane models
    return h;
}

}  // namespace

TEST_CASE("model validation")
{
    auto p2 = fixtures::projective_plane();
    CHECK(p2.c1_squared() == 9);
    CHECK(p2.c2() == 3);

    SurfaceModel bad = p2;
    bad.G = QMatrix{{-1}};
    CHECK_THROWS_AS(bad.validate(), InvariantViolation);

    bad = p2;
    bad.curves.push_back({"C", {1}, false});
    bad.curves.push_back({"C", {2}, false});
    CHECK_THROWS_AS(bad.validate(), InvariantViolation);

    bad = p2;
    bad.K = {-2};  // L² + K·L = -1 is odd
    CHECK_THROWS_AS(bad.validate(), InvariantViolation);

    bad = p2;
    bad.curves[0].rational = false;
    CHECK_THROWS_AS(bad.validate(), InvariantViolation);
}

TEST_CASE("blow-up bookkeeping")
{
    auto x = fixtures::blown_up_plane();
    CHECK(x.rank == 2);
    CHECK(x.curve("L").cls == QVector{1, -1});
    CHECK(x.curve("E").cls == QVector{0, 1});
    CHECK(x.K == QVector{-3, 1});
    CHECK(x.c1_squared() == 8);
    CHECK(x.c2() == 4);

    auto chain = fixtures::iterated_blowup_plane(3);
    CHECK(chain.dot(chain.curve("E1").cls, chain.curve("E1").cls) == -2);
    CHECK(chain.dot(chain.curve("E2").cls, chain.curve("E2").cls) == -2);
    CHECK(chain.dot(chain.curve("E3").cls, chain.curve("E3").cls) == -1);
    CHECK(chain.dot(chain.curve("L").cls, chain.curve("L").cls) == -2);

    auto p2 = fixtures::projective_plane();
    CHECK_THROWS_AS(blow_up(p2, {{"L", 2}}), PreconditionError);
    CHECK_THROWS_AS(blow_up(p2, {{"M", 1}}), PreconditionError);
    CHECK_THROWS_AS(blow_up(x, {{"L", 1}, {"E", 1}}, {"E"}), PreconditionError);
    auto y = blow_up(x, {{"L", 1}});
    CHECK(y.find_curve("E3"));
}

TEST_CASE("blow-up followed by contraction is the identity")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        auto r = fixtures::random_rational_pair(rng);
        const auto& s = r.pair.surface;
        std::vector<std::pair<std::string, long>> inc;
        const auto& c = s.curves[rng() % s.curves.size()];
        inc.emplace_back(c.name, 1);
        auto up = blow_up(s, inc, {"X"});
        CHECK(contract(up, "X") == s);
        CHECK(up.c1_squared() == s.c1_squared() - 1);
        CHECK(up.c2() == s.c2() + 1);
    }
}

TEST_CASE("contraction of a non-negative curve is refused")
{
    auto x = fixtures::blown_up_plane();
    CHECK_THROWS_AS(contract(x, "L"), PreconditionError);
    CHECK_THROWS_AS(contract(x, "Z"), PreconditionError);
    auto y = contract(x, "E");
    CHECK(y == fixtures::projective_plane());
}

TEST_CASE("Zariski decomposition on Bl_p P2")
{
    auto x = fixtures::blown_up_plane();
    // H = L + E in the basis (H, E).
    auto z = zariski(x, QVector{1, 2});
    REQUIRE(std::holds_alternative<ZariskiResult>(z));
    const auto& r = std::get<ZariskiResult>(z);
    CHECK(r.P == QVector{1, 0});
    REQUIRE(r.N.size() == 1);
    CHECK(r.N[0] == std::pair<std::string, Rational>{"E", 2});

    CHECK(std::holds_alternative<NotPseudoeffective>(zariski(x, QVector{2, -3})));
    CHECK(std::holds_alternative<NotPseudoeffective>(zariski(x, QVector{-1, 0})));

    auto nef = zariski(x, QVector{3, -1});
    REQUIRE(std::holds_alternative<ZariskiResult>(nef));
    CHECK(std::get<ZariskiResult>(nef).N.empty());
    CHECK(std::get<ZariskiResult>(nef).P == QVector{3, -1});
}

TEST_CASE("Example-1 base locus threshold at t = 1/s")
{
    for (long s : {5, 6, 9}) {
        auto x = fixtures::example_one(s);
        auto in_b = [&](const Rational& t) { return contains(divisorial_base_locus({x, {{"S", t}}}), "E"); };
        CHECK(in_b(0));
        CHECK(in_b(Rational(1, s) - q(1, 1000)));
        CHECK_FALSE(in_b(Rational(1, s)));
        CHECK_FALSE(in_b(q(1, 2)));
    }
    // Two coefficients: E ∈ B exactly when δ1 s - δ2 < 1.
    auto x = fixtures::example_one(5);
    for (long a = 0; a <= 10; ++a)
        for (long b = 0; b <= 10; ++b) {
            Rational d1 = q(a, 10), d2 = q(b, 10);
            bool expected = d1 * 5 - d2 < 1;
            CHECK(contains(divisorial_base_locus({x, {{"S", d1}, {"E", d2}}}), "E") == expected);
        }
}

TEST_CASE("Hirzebruch base locus threshold at t = 1 - 2/s")
{
    for (long s : {4, 8, 12}) {
        auto x = fixtures::hirzebruch(s);
        Rational t0 = 1 - Rational(2, s);
        auto in_b = [&](const Rational& t) {
            return contains(divisorial_base_locus({x, {{"A", q(1, 2)}, {"E", t}}}), "E");
        };
        CHECK_FALSE(in_b(q(1, 2)));
        CHECK_FALSE(in_b(t0));
        CHECK(in_b(t0 + q(1, 1000)));
        CHECK(in_b(1));
    }
}

TEST_CASE("augmented base locus")
{
    auto x = fixtures::example_one(5);
    CHECK(augmented_null_curves({x, {{"S", q(1, 2)}}}).empty());
    // At t = 1/s the positive part is K + S/5, orthogonal to E.
    CHECK(augmented_null_curves({x, {{"S", q(1, 5)}}}) == std::vector<std::string>{"E"});
    // Curves in Supp N are always included.
    CHECK(contains(augmented_null_curves({x, {{"S", q(1, 10)}}}), "E"));

    auto p2 = fixtures::blown_up_plane();
    CHECK_THROWS_AS(augmented_null_curves({p2, {}}), NotPseudoeffectiveError);
}

TEST_CASE("Zariski output is independent of the scan order and matches brute force")
{
    std::mt19937_64 rng(23);
    int compared = 0;
    for (int trial = 0; trial < 120; ++trial) {
        auto r = fixtures::random_rational_pair(rng);
        const auto& s = r.pair.surface;
        // Random target D = K + Δ + a small multiple of H to reach both outcomes.
        QVector d = r.pair.log_canonical();
        d[0] += static_cast<long>(rng() % 4);
        auto base = zariski(s, d);

        std::vector<std::size_t> order(s.curves.size());
        std::iota(order.begin(), order.end(), 0);
        for (int k = 0; k < 4; ++k) {
            std::shuffle(order.begin(), order.end(), rng);
            auto other = zariski(s, d, order);
            REQUIRE(other.index() == base.index());
            if (auto* z = std::get_if<ZariskiResult>(&base))
                CHECK(std::get<ZariskiResult>(other) == *z);
        }

        std::vector<QVector> classes;
        std::size_t negatives = 0;
        for (const auto& c : s.curves) {
            classes.push_back(c.cls);
            if (s.dot(c.cls, c.cls) < 0)
                ++negatives;
        }
        if (negatives > 3)
            continue;
        ++compared;
        auto oracle = oracle::zariski_bruteforce(s.G, classes, d, positive_class(s));
        REQUIRE(oracle.pseudoeffective == std::holds_alternative<ZariskiResult>(base));
        if (auto* z = std::get_if<ZariskiResult>(&base)) {
            CHECK(z->P == oracle.P);
            for (std::size_t i = 0; i < s.curves.size(); ++i) {
                Rational c = 0;
                for (const auto& [name, v] : z->N)
                    if (name == s.curves[i].name)
                        c = v;
                CHECK(c == oracle.coeff[i]);
            }
        }
    }
    CHECK(compared > 20);
}

TEST_CASE("Zariski invariants: P nef, P orthogonal to N, N negative definite")
{
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 80; ++trial) {
        auto r = fixtures::random_rational_pair(rng);
        const auto& s = r.pair.surface;
        QVector d = r.pair.log_canonical();
        d[0] += 3;
        auto out = zariski(s, d);
        auto* z = std::get_if<ZariskiResult>(&out);
        if (!z)
            continue;
        for (const auto& c : s.curves)
            CHECK(s.dot(z->P, c.cls) >= 0);
        QVector sum = z->P;
        for (const auto& [name, coeff] : z->N) {
            CHECK(coeff > 0);
            CHECK(s.dot(z->P, s.curve(name).cls) == 0);
            for (std::size_t j = 0; j < sum.size(); ++j)
                sum[j] += coeff * s.curve(name).cls[j];
        }
        CHECK(sum == d);
    }
}

TEST_CASE("base locus shrinks as boundary coefficients grow")
{
    std::mt19937_64 rng(31);
    int checked = 0;
    for (int trial = 0; trial < 80; ++trial) {
        auto r = fixtures::random_rational_pair(rng);
        const auto& s = r.pair.surface;
        // V = the four lines; F ranges over the other curves.
        PairConfig low{s, {}}, high{s, {}};
        for (int i = 1; i <= 4; ++i) {
            Rational b = q(static_cast<long>(rng() % 5), 4);
            Rational extra = q(static_cast<long>(rng() % 5), 4);
            low.boundary.push_back({"L" + std::to_string(i), b});
            high.boundary.push_back({"L" + std::to_string(i), std::min(Rational(1), b + extra)});
        }
        auto zl = zariski(s, low.log_canonical());
        auto zh = zariski(s, high.log_canonical());
        if (!std::holds_alternative<ZariskiResult>(zl) || !std::holds_alternative<ZariskiResult>(zh))
            continue;
        ++checked;
        auto bl = divisorial_base_locus(low);
        auto bh = divisorial_base_locus(high);
        for (const auto& c : s.curves) {
            if (c.name[0] == 'L')
                continue;
            if (!contains(bl, c.name))
                CHECK_FALSE(contains(bh, c.name));
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("(-1)-curve census")
{
    for (long r = 1; r <= 3; ++r) {
        auto c = minus_one_census(fixtures::ruled_census(2, r));
        CHECK(c.count == static_cast<std::size_t>(2 * r));
        REQUIRE(c.A2);
        CHECK(*c.A2 == r);
        CHECK(c.A == 2 * r);
        CHECK(c.c1_squared == -8 - r);
        CHECK(c.c2 == -4 + r);
        CHECK(c.pass);
    }
    for (long r = 0; r <= 4; ++r) {
        auto c = minus_one_census(fixtures::quintic_census(r));
        CHECK(c.count == static_cast<std::size_t>(r));
        CHECK_FALSE(c.A2);
        CHECK(c.A == 55 + r);
        CHECK(c.pass);
    }
    CHECK_THROWS_AS(minus_one_census(fixtures::blown_up_plane()), PreconditionError);
}
