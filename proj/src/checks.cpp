#include "geography/checks.hpp"

#include <algorithm>
#include <numeric>

#include "geography/fixtures.hpp"

namespace geography::checks {

namespace {

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

bool e_in_base_locus(const PairConfig& cfg)
{
    auto b = divisorial_base_locus(cfg);
    return std::find(b.begin(), b.end(), "E") != b.end();
}

PairConfig example_one_pair(long s, const Rational& t)
{
    return {fixtures::example_one(s), {{"S", t}}};
}

PairConfig hirzebruch_pair(long s, const Rational& t)
{
    return {fixtures::hirzebruch(s), {{"A", Rational(1, 2)}, {"E", t}}};
}

}  // namespace

RandomCertificateCase random_certificate_case(std::mt19937_64& rng)
{
    static const Rational epsilons[] = {Rational(1, 2), Rational(1, 3), Rational(1, 4)};
    const std::size_t p = 1 + pick(rng, 3);
    const long m = 2 + static_cast<long>(pick(rng, 2));
    const Rational eps = epsilons[pick(rng, 3)];
    // Entries of admissible rows: -M ≤ α < Mp/ε.
    const long top = static_cast<long>(ceil(Rational(m * static_cast<long>(p)) / eps)) - 1;

    for (;;) {
        std::vector<Halfspace> cs;
        for (std::size_t j = 0; j < p; ++j) {
            ZVector e(p, Integer(0));
            e[j] = 1;
            cs.push_back({e, 0});
            e[j] = -1;
            cs.push_back({e, -1});
        }
        const std::size_t extra = 1 + pick(rng, 4);
        for (std::size_t c = 0; c < extra; ++c) {
            Halfspace h;
            for (std::size_t j = 0; j < p; ++j)
                h.normal.push_back(Integer(-m + static_cast<long>(pick(rng, static_cast<std::uint64_t>(top + m + 1)))));
            h.bound = Integer(-(m - 1) + static_cast<long>(pick(rng, static_cast<std::uint64_t>(2 * m - 1))));
            cs.push_back(std::move(h));
        }
        auto h = HPolytope::assume_bounded(p, std::move(cs));
        if (full_dimensional(h))
            return {std::move(h), Integer(m), eps};
    }
}

CertificateSuite run_certificate_suite(std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    CertificateSuite s;
    for (std::size_t i = 0; i < count; ++i) {
        auto c = random_certificate_case(rng);
        auto cert = denominator_certificate(c.polytope, c.M, c.eps);
        ++s.polytopes;
        s.vertices_checked += cert.vertices.size();
        for (const auto& v : cert.vertices)
            s.max_denominator = std::max(s.max_denominator, v.lcm_denominator);
        if (!cert.certified)
            ++s.failures;
    }
    return s;
}

FamilySuite run_family_suite(std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    FamilySuite s;
    for (std::size_t i = 0; i < count; ++i) {
        RandomFamilyOptions opt;
        opt.dim = 1 + pick(rng, 3);
        opt.regions = 1 + pick(rng, 3);
        opt.extra_cuts = pick(rng, 3);
        auto fam = random_region_family(opt, rng);
        auto r = check_region_family(fam);
        ++s.families;
        s.max_ell = std::max(s.max_ell, r.ell);
        if (!r.pass) {
            ++s.failures;
            s.failing.push_back(r);
        }
    }
    return s;
}

Rational example_one_threshold(long s)
{
    auto x = fixtures::example_one(s);
    const auto& e = x.curve("E").cls;
    const auto& sc = x.curve("S").cls;
    return -x.dot(x.K, e) / x.dot(sc, e);
}

const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names = {"vertex-denominators", "cell-count",        "minus-one-census",
                                                   "example-1",           "example-2",         "terminal-chambers",
                                                   "valuation-count"};
    return names;
}

CheckResult run_check(const std::string& name, std::uint64_t seed)
{
    CheckResult r;
    r.name = name;
    io::Json w;
    if (name == "vertex-denominators") {
        auto s = run_certificate_suite(50, seed);
        w = {{"polytopes", s.polytopes},
             {"vertices", s.vertices_checked},
             {"failures", s.failures},
             {"max_denominator", io::to_json(s.max_denominator)}};
        r.pass = s.failures == 0;
    } else if (name == "cell-count") {
        auto s = run_family_suite(30, seed);
        w = {{"families", s.families}, {"failures", s.failures}, {"max_ell", s.max_ell}};
        r.pass = s.failures == 0;
    } else if (name == "minus-one-census") {
        io::Json rows = io::Json::array();
        r.pass = true;
        for (long k = 1; k <= 3; ++k) {
            auto c = minus_one_census(fixtures::ruled_census(2, k));
            bool tight = Rational(static_cast<long>(c.count)) == 2 * k && c.A == 2 * k;
            r.pass = r.pass && c.pass && tight;
            rows.push_back({{"fixture", "ruled g=2 r=" + std::to_string(k)}, {"census", io::to_json(c)}});
        }
        auto q = minus_one_census(fixtures::quintic_census(3));
        r.pass = r.pass && q.pass;
        rows.push_back({{"fixture", "quintic r=3"}, {"census", io::to_json(q)}});
        w = rows;
    } else if (name == "example-1") {
        const long s = 5;
        Rational t0 = example_one_threshold(s);
        bool below = e_in_base_locus(example_one_pair(s, t0 - Rational(1, 100)));
        bool at = e_in_base_locus(example_one_pair(s, t0));
        bool zero = e_in_base_locus(example_one_pair(s, 0));
        r.pass = t0 == Rational(1, s) && below && zero && !at;
        w = {{"s", s}, {"threshold", io::to_json(t0)}, {"E_in_B_below", below}, {"E_in_B_at_threshold", at}};
    } else if (name == "example-2") {
        const long s = 8;
        Rational t0 = 1 - Rational(2, s);
        bool half = e_in_base_locus(hirzebruch_pair(s, Rational(1, 2)));
        bool at = e_in_base_locus(hirzebruch_pair(s, t0));
        bool above = e_in_base_locus(hirzebruch_pair(s, t0 + Rational(1, 100)));
        bool one = e_in_base_locus(hirzebruch_pair(s, 1));
        r.pass = !half && !at && above && one;
        w = {{"s", s}, {"threshold", io::to_json(t0)}, {"E_in_B_at_threshold", at}, {"E_in_B_above", above}};
    } else if (name == "terminal-chambers") {
        auto geo = compute_geography(fixtures::example_one(5), {"S", "E"}, Rational(1, 10));
        auto rep = terminal_chamber_report(geo);
        bool convex = std::all_of(geo.chambers.begin(), geo.chambers.end(), [](const Chamber& c) { return c.convex; });
        r.pass = rep.chamber_count == 2 && rep.terminal_count == 2 && rep.certified && convex &&
                 chambers_midpoint_convex(geo);
        w = {{"chambers", rep.chamber_count},
             {"terminal", rep.terminal_count},
             {"max_denominator", io::to_json(rep.max_denominator)},
             {"certified", rep.certified}};
    } else if (name == "valuation-count") {
        const Rational a(3, 5);
        auto e = enumerate_low_discrepancy(fixtures::two_curves(a, a), {}, 1);
        std::vector<Rational> got;
        for (const auto& rec : e.records)
            got.push_back(rec.discrepancy);
        // Weights w ≥ 1 with Σ w (1 - a) - 1 < 1, counted directly.
        std::size_t direct = 0;
        for (long w1 = 1; w1 < 10; ++w1)
            for (long w2 = 1; w2 < 10; ++w2)
                if (std::gcd(w1, w2) == 1 && (w1 + w2) * (1 - a) - 1 < 1)
                    ++direct;
        r.pass = got == std::vector<Rational>{Rational(-1, 5), Rational(1, 5), Rational(3, 5)} && e.total == direct;
        w = {{"records", e.records.size()}, {"total", e.total}, {"direct_count", direct}, {"max_depth", e.max_depth}};
    } else {
        throw PreconditionError("unknown check '" + name + "'");
    }
    r.witness = w;
    return r;
}

io::Json run_suite(const io::Json& suite, std::uint64_t seed, bool& all_pass)
{
    const io::Json* list = &suite;
    if (suite.is_object()) {
        auto it = suite.find("checks");
        if (it == suite.end())
            throw ParseError("suite must hold a 'checks' array");
        list = &*it;
    }
    if (!list->is_array())
        throw ParseError("suite checks must be an array of names");
    std::vector<std::string> names;
    for (const auto& n : *list) {
        if (!n.is_string())
            throw ParseError("suite check names must be strings");
        names.push_back(n.get<std::string>());
    }
    for (const auto& n : names)
        if (std::find(check_names().begin(), check_names().end(), n) == check_names().end())
            throw PreconditionError("unknown check '" + n + "'");

    all_pass = true;
    io::Json out = io::Json::array();
    for (const auto& n : names) {
        auto r = run_check(n, seed);
        all_pass = all_pass && r.pass;
        out.push_back({{"check", r.name}, {"pass", r.pass}, {"witness", r.witness}});
    }
    return {{"seed", seed}, {"checks", out}, {"pass", all_pass}};
}

}  // namespace geography::checks
