// Acceptance run: one PASS/FAIL line per criterion. Exact rational arithmetic
// throughout, so every numeric comparison has tolerance 0; only the wall-clock
// limits are inexact.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "geography/checks.hpp"
#include "geography/fixtures.hpp"
#include "geography/mmp.hpp"
#include "geography/valuations.hpp"
#include "oracles.hpp"

using namespace geography;

namespace {

constexpr std::uint64_t seed = 20240601;
constexpr double certificate_limit_s = 60.0;
constexpr double geography_limit_s = 30.0;

using Names = std::vector<std::string>;

struct Verdict {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int n, const std::function<Verdict()>& body)
{
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass)
        ++failures;
    std::printf("criterion %d: %s  %s\n", n, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool contains(const Names& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

Names sorted(Names v)
{
    std::sort(v.begin(), v.end());
    return v;
}

bool e_in_b(const PairConfig& cfg) { return contains(divisorial_base_locus(cfg), "E"); }

// Hull of the cells on which pred holds at the barycenter, with its convexity.
std::pair<HPolytope, bool> cell_union(const Geography& g, const std::function<bool(const GeographyCell&)>& pred)
{
    VPolytope pts{g.domain.dim(), {}};
    Rational vol = 0;
    for (const auto& c : g.cells)
        if (pred(c)) {
            pts.vertices.insert(pts.vertices.end(), c.vertices.begin(), c.vertices.end());
            vol += volume(c.polytope);
        }
    if (pts.vertices.empty())
        return {HPolytope::empty(g.domain.dim()), true};
    auto hull = to_hpolytope(pts);
    return {hull, volume(hull) == vol};
}

Verdict criterion1()
{
    auto t0 = std::chrono::steady_clock::now();
    auto s = checks::run_certificate_suite(200, seed);
    double dt = seconds_since(t0);
    std::ostringstream d;
    d << s.polytopes << " polytopes, " << s.vertices_checked << " vertices in [eps,1]^p certified, " << s.failures
      << " failures, max denominator " << s.max_denominator << ", " << dt << " s (limit " << certificate_limit_s
      << " s)";
    return {s.polytopes == 200 && s.failures == 0 && dt < certificate_limit_s, d.str()};
}

Verdict criterion2()
{
    auto s = checks::run_family_suite(100, seed);
    std::size_t bound_ok = 0, recursion_ok = 0;
    for (const auto& f : s.failing) {
        bound_ok += f.ell_within_bound;
        recursion_ok += f.face_recursion;
    }
    std::ostringstream d;
    d << s.families << " families, " << s.failures << " failures, max ell " << s.max_ell;
    if (s.failures)
        d << " (of the failing: " << bound_ok << " within bound, " << recursion_ok << " with J recursion)";
    return {s.families == 100 && s.failures == 0, d.str()};
}

Verdict criterion3()
{
    auto x = fixtures::example_one(5);
    auto at = [&](const Rational& t) { return e_in_b({x, {{"S", t}}}); };
    const std::vector<Rational> in{0, Rational(1, 10), Rational(1, 5) - Rational(1, 100)};
    const std::vector<Rational> out{Rational(1, 5), Rational(3, 10), Rational(1, 2)};
    bool ok = true;
    std::ostringstream d;
    d << "s=5, E in B at";
    for (const auto& t : in) {
        ok = ok && at(t);
        d << " " << t << (at(t) ? ":yes" : ":no");
    }
    d << "; E not in B at";
    for (const auto& t : out) {
        ok = ok && !at(t);
        d << " " << t << (at(t) ? ":in" : ":out");
    }
    return {ok, d.str()};
}

Verdict criterion4()
{
    auto x = fixtures::hirzebruch(8);
    auto at = [&](const Rational& t) { return e_in_b({x, {{"A", Rational(1, 2)}, {"E", t}}}); };
    const std::vector<Rational> excluded{Rational(1, 2), Rational(3, 4)};
    const std::vector<Rational> included{Rational(3, 4) + Rational(1, 100), Rational(1)};
    bool ok = true;
    std::ostringstream d;
    d << "s=8, A coefficient 1/2; excluded at";
    for (const auto& t : excluded) {
        ok = ok && !at(t);
        d << " " << t << (at(t) ? ":in" : ":out");
    }
    d << "; included at";
    for (const auto& t : included) {
        ok = ok && at(t);
        d << " " << t << (at(t) ? ":in" : ":out");
    }
    return {ok, d.str()};
}

Verdict criterion5()
{
    bool ok = true;
    std::ostringstream d;
    for (long r = 1; r <= 3; ++r) {
        auto c = minus_one_census(fixtures::ruled_census(2, r));
        bool row = Rational(static_cast<long>(c.count)) == 2 * r && c.A == 2 * r;
        ok = ok && row && c.pass;
        d << "ruled g=2 r=" << r << ": " << c.count << " = A " << c.A << "; ";
    }
    for (long r = 1; r <= 3; ++r) {
        auto c = minus_one_census(fixtures::quintic_census(r));
        ok = ok && c.pass && Rational(static_cast<long>(c.count)) <= c.A;
        d << "quintic r=" << r << ": " << c.count << " <= A " << c.A << (r < 3 ? "; " : "");
    }
    return {ok, d.str()};
}

Verdict criterion6()
{
    auto t0 = std::chrono::steady_clock::now();
    auto x = fixtures::example_one(5);
    const Names v{"S", "E"};
    auto geo = compute_geography(x, v, Rational(1, 10));
    bool convex = std::all_of(geo.chambers.begin(), geo.chambers.end(), [](const Chamber& c) { return c.convex; });
    bool midpoint = chambers_midpoint_convex(geo);

    std::mt19937_64 rng(seed);
    std::size_t agree = 0;
    const long den = 1000;
    for (int i = 0; i < 50; ++i) {
        QVector a;
        for (int j = 0; j < 2; ++j)
            a.push_back(Rational(den / 10 + static_cast<long>(rng() % (8 * den / 10 + 1)), den));
        auto fp = classify_point(x, v, a);
        auto b = sorted(divisorial_base_locus(pair_at(x, v, a)));
        bool in_some = false;
        for (const auto& c : geo.chambers)
            if (c.hull.contains(a) && fp && c.fingerprint == *fp)
                in_some = true;
        if (fp && sorted(*fp) == b && in_some)
            ++agree;
    }
    double dt = seconds_since(t0);
    std::ostringstream d;
    d << geo.chambers.size() << " chambers, convex " << convex << ", midpoint-convex " << midpoint << ", " << agree
      << "/50 samples agree with the base locus, " << dt << " s (limit " << geography_limit_s << " s)";
    return {geo.chambers.size() == 2 && convex && midpoint && agree == 50 && dt < geography_limit_s, d.str()};
}

Verdict criterion7()
{
    const Rational a(3, 5);
    auto none = [](const std::vector<long>&) {};
    auto two = enumerate_low_discrepancy(fixtures::two_curves(a, a), {}, 1);
    std::vector<Rational> got;
    for (const auto& r : two.records)
        got.push_back(r.discrepancy);
    std::size_t two_oracle = oracle::weight_vectors({a, a}, 2, none);
    bool two_ok = got == std::vector<Rational>{Rational(-1, 5), Rational(1, 5), Rational(3, 5)} &&
                  two.total == 5 && two_oracle == 5;

    auto tri = enumerate_low_discrepancy(fixtures::triple_point(a, a, a), {{{0, 1, 2}, 0, false}}, 1);
    std::size_t on_point = 0;
    for (const auto& r : tri.records)
        if (r.x_center.divisors.size() == 3)
            on_point += r.orbit_size;
    std::size_t tri_oracle = oracle::weight_vectors({a, a, a}, 2, none);
    bool tri_ok = on_point == tri_oracle && tri_oracle == 4;

    std::ostringstream d;
    d << "two curves: " << two.records.size() << " orbit records (";
    for (std::size_t i = 0; i < got.size(); ++i)
        d << (i ? ", " : "") << got[i];
    d << "), total " << two.total << ", oracle " << two_oracle << "; triple point: " << on_point
      << " valuations on the point, oracle " << tri_oracle;
    return {two_ok && tri_ok, d.str()};
}

Verdict criterion8()
{
    std::mt19937_64 rng(seed);
    std::size_t ltm = 0, shuffle_ok = 0, order_ok = 0, compared = 0, oracle_ok = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto r = fixtures::random_rational_pair(rng);
        const auto& s = r.pair.surface;

        auto base = run_log_mmp(r.pair);
        if (base.outcome == MMPOutcome::log_terminal_model) {
            ++ltm;
            bool same = true;
            for (std::uint64_t k = 1; k <= 5; ++k) {
                auto other = run_log_mmp(r.pair, {seed + k});
                same = same && other.outcome == base.outcome && other.fingerprint == base.fingerprint;
            }
            shuffle_ok += same;
        }

        QVector d = r.pair.log_canonical();
        auto z = zariski(s, d);
        std::vector<std::size_t> order(s.curves.size());
        std::iota(order.begin(), order.end(), 0);
        bool same = true;
        for (int k = 0; k < 5; ++k) {
            std::shuffle(order.begin(), order.end(), rng);
            auto other = zariski(s, d, order);
            same = same && other.index() == z.index();
            if (same && std::holds_alternative<ZariskiResult>(z))
                same = std::get<ZariskiResult>(other) == std::get<ZariskiResult>(z);
        }
        order_ok += same;

        std::vector<QVector> classes;
        std::size_t negatives = 0;
        for (const auto& c : s.curves) {
            classes.push_back(c.cls);
            negatives += s.dot(c.cls, c.cls) < 0;
        }
        if (negatives > 3)
            continue;
        ++compared;
        QVector h(s.rank, Rational(0));
        h[0] = 1;
        auto o = oracle::zariski_bruteforce(s.G, classes, d, h);
        bool match = o.pseudoeffective == std::holds_alternative<ZariskiResult>(z);
        if (match && o.pseudoeffective) {
            const auto& zr = std::get<ZariskiResult>(z);
            match = zr.P == o.P;
            for (std::size_t i = 0; i < s.curves.size(); ++i) {
                Rational c = 0;
                for (const auto& [name, v] : zr.N)
                    if (name == s.curves[i].name)
                        c = v;
                match = match && c == o.coeff[i];
            }
        }
        oracle_ok += match;
    }
    std::ostringstream d;
    d << "100 pairs; shuffle-invariant fingerprints " << shuffle_ok << "/" << ltm
      << " log terminal outcomes; Zariski order-invariant " << order_ok << "/100; brute-force agreement "
      << oracle_ok << "/" << compared << " pairs with at most 3 negative curves";
    return {ltm > 0 && shuffle_ok == ltm && order_ok == 100 && compared > 0 && oracle_ok == compared, d.str()};
}

Verdict criterion9()
{
    auto x = fixtures::example_one(5);
    auto not_in_b = [&](const Geography& g) {
        return [&g](const GeographyCell& c) { return !e_in_b(pair_at(g.surface, g.V, c.sample)); };
    };

    auto g1 = compute_geography(x, {"S"}, Rational(1, 10));
    auto [p1, convex1] = cell_union(g1, not_in_b(g1));
    bool up1 = convex1 && !enumerate_vertices(p1).empty() && is_upward_closed(p1, g1.domain);
    auto v1 = enumerate_vertices(p1).vertices;

    auto g2 = compute_geography(x, {"S", "E"}, Rational(1, 10));
    auto [p2, convex2] = cell_union(g2, not_in_b(g2));
    bool up2 = convex2 && is_upward_closed(p2, g2.domain);

    std::ostringstream d;
    d << "V={S}: {E not in B} = [" << v1.front()[0] << ", " << v1.back()[0] << "], upward closed " << up1
      << "; V={S,E} (informational): upward closed " << up2;
    return {up1, d.str()};
}

}  // namespace

int main()
{
    std::printf("acceptance seed %llu; exact arithmetic, tolerance 0\n", static_cast<unsigned long long>(seed));
    report(1, criterion1);
    report(2, criterion2);
    report(3, criterion3);
    report(4, criterion4);
    report(5, criterion5);
    report(6, criterion6);
    report(7, criterion7);
    report(8, criterion8);
    report(9, criterion9);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
