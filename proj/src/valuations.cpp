#include "geography/valuations.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "geography/combinations.hpp"

namespace geography {

namespace {

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v)
{
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
        throw PreconditionError("a divisor is listed twice in a stratum");
    return v;
}

long count_of(const std::vector<SNCStratum>& strata, const std::vector<std::size_t>& key)
{
    for (const auto& s : strata)
        if (s.divisors == key)
            return s.components;
    return 0;
}

void adjust(std::vector<SNCStratum>& strata, std::vector<std::size_t> key, long delta)
{
    std::sort(key.begin(), key.end());
    for (auto it = strata.begin(); it != strata.end(); ++it)
        if (it->divisors == key) {
            it->components += delta;
            if (it->components <= 0)
                strata.erase(it);
            return;
        }
    if (delta > 0)
        strata.push_back({key, delta});
}

std::string fresh_name(const SNCConfig& cfg, std::size_t& counter)
{
    while (true) {
        std::string name = "E" + std::to_string(++counter);
        bool used = std::any_of(cfg.divisors.begin(), cfg.divisors.end(),
                                [&](const SNCDivisor& d) { return d.name == name; });
        if (!used)
            return name;
    }
}

}  // namespace

SNCConfig SNCConfig::boundary(int dim, const std::vector<std::pair<std::string, Rational>>& divisors,
                              const std::vector<SNCStratum>& pairs, const std::vector<SNCStratum>& triples)
{
    SNCConfig cfg;
    cfg.dim = dim;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        ZVector mult(divisors.size(), Integer(0));
        mult[i] = 1;
        cfg.divisors.push_back({divisors[i].first, divisors[i].second, -divisors[i].second,
                                DivisorOrigin::boundary, 0, mult});
    }
    for (auto s : pairs) {
        s.divisors = sorted_unique(s.divisors);
        cfg.pair_strata.push_back(s);
    }
    for (auto s : triples) {
        s.divisors = sorted_unique(s.divisors);
        cfg.triple_strata.push_back(s);
    }
    cfg.validate();
    return cfg;
}

std::size_t SNCConfig::boundary_count() const
{
    return static_cast<std::size_t>(std::count_if(divisors.begin(), divisors.end(), [](const SNCDivisor& d) {
        return d.origin == DivisorOrigin::boundary;
    }));
}

long SNCConfig::pair_count(std::size_t i, std::size_t j) const
{
    return count_of(pair_strata, sorted_unique({i, j}));
}

long SNCConfig::triple_count(std::size_t i, std::size_t j, std::size_t k) const
{
    return count_of(triple_strata, sorted_unique({i, j, k}));
}

void SNCConfig::validate() const
{
    if (dim != 2 && dim != 3)
        throw PreconditionError("SNC dimension must be 2 or 3, got " + std::to_string(dim));
    if (dim == 2 && !triple_strata.empty())
        throw PreconditionError("a surface configuration has no triple points");
    const std::size_t nb = boundary_count();
    std::set<std::string> names;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        const auto& d = divisors[i];
        if (!names.insert(d.name).second)
            throw PreconditionError("divisor name '" + d.name + "' is repeated");
        if (d.multiplicity.size() != nb)
            throw PreconditionError("multiplicity vector of '" + d.name + "' has the wrong length");
        for (const auto& m : d.multiplicity)
            if (m < 0)
                throw PreconditionError("negative multiplicity on '" + d.name + "'");
        if (d.origin == DivisorOrigin::boundary) {
            if (i >= nb)
                throw PreconditionError("boundary divisors must precede exceptional ones");
            if (d.coeff < 0 || d.coeff > 1)
                throw PreconditionError("coefficient of '" + d.name + "' is outside [0, 1]");
            if (d.discrepancy != -d.coeff)
                throw PreconditionError("boundary divisor '" + d.name + "' must have discrepancy -coeff");
        } else if (d.coeff != 0) {
            throw PreconditionError("exceptional divisor '" + d.name + "' has a boundary coefficient");
        }
    }
    auto check = [&](const std::vector<SNCStratum>& strata, std::size_t arity, const char* what) {
        std::set<std::vector<std::size_t>> seen;
        for (const auto& s : strata) {
            if (s.divisors.size() != arity)
                throw PreconditionError(std::string(what) + " stratum must list " + std::to_string(arity) +
                                        " divisors");
            if (!std::is_sorted(s.divisors.begin(), s.divisors.end()) ||
                std::adjacent_find(s.divisors.begin(), s.divisors.end()) != s.divisors.end())
                throw PreconditionError(std::string(what) + " stratum divisors must be sorted and distinct");
            for (auto i : s.divisors)
                if (i >= divisors.size())
                    throw PreconditionError(std::string(what) + " stratum names divisor index " +
                                            std::to_string(i) + " out of range");
            if (s.components < 0)
                throw PreconditionError(std::string(what) + " stratum has a negative component count");
            if (!seen.insert(s.divisors).second)
                throw PreconditionError(std::string(what) + " stratum is listed twice");
        }
    };
    check(pair_strata, 2, "pair");
    check(triple_strata, 3, "triple");
    for (const auto& t : triple_strata) {
        if (t.components == 0)
            continue;
        const auto& v = t.divisors;
        if (pair_count(v[0], v[1]) < 1 || pair_count(v[0], v[2]) < 1 || pair_count(v[1], v[2]) < 1)
            throw PreconditionError("a triple point lies off one of its pair curves");
    }
}

std::pair<SNCConfig, ValuationRecord> blowup_discrepancy(const SNCConfig& cfg, const Center& center)
{
    cfg.validate();
    const auto div = sorted_unique(center.divisors);
    for (auto i : div)
        if (i >= cfg.divisors.size())
            throw PreconditionError("center names divisor index " + std::to_string(i) + " out of range");
    if (center.curve && cfg.dim != 3)
        throw PreconditionError("curve centers exist only on threefolds");
    if (center.curve && div.size() != 2)
        throw PreconditionError("a curve center must be a pair curve");
    const int codim = center.curve ? 2 : cfg.dim;
    if (div.size() > static_cast<std::size_t>(codim))
        throw PreconditionError("more divisors than the codimension contain the center");
    const long comp = static_cast<long>(center.component);

    bool stratum = false;
    if (div.size() == 2) {
        if (cfg.pair_count(div[0], div[1]) <= comp)
            throw PreconditionError("divisors " + cfg.divisors[div[0]].name + " and " + cfg.divisors[div[1]].name +
                                    " have no component " + std::to_string(comp));
        stratum = cfg.dim == 2 || center.curve;
        if (!stratum && comp != 0)
            throw PreconditionError("points on pair curves are supported on component 0 only");
    } else if (div.size() == 3) {
        if (cfg.triple_count(div[0], div[1], div[2]) <= comp)
            throw PreconditionError("no such triple point");
        stratum = true;
    } else if (comp != 0) {
        throw PreconditionError("a general center has no component index");
    }

    SNCConfig out = cfg;
    std::size_t counter = 0;
    SNCDivisor e;
    e.name = fresh_name(cfg, counter);
    e.origin = DivisorOrigin::exceptional;
    e.coeff = 0;
    e.discrepancy = codim - 1;
    e.multiplicity.assign(cfg.boundary_count(), Integer(0));
    std::size_t parent_depth = 0;
    for (auto i : div) {
        const auto& d = cfg.divisors[i];
        e.discrepancy += d.discrepancy;
        for (std::size_t b = 0; b < e.multiplicity.size(); ++b)
            e.multiplicity[b] += d.multiplicity[b];
        parent_depth = std::max(parent_depth, d.depth);
    }
    e.depth = parent_depth + 1;
    const std::size_t ei = out.divisors.size();
    out.divisors.push_back(e);

    if (cfg.dim == 2) {
        if (div.size() == 2)
            adjust(out.pair_strata, div, -1);
        for (auto i : div)
            adjust(out.pair_strata, {ei, i}, 1);
    } else if (!center.curve) {
        if (div.size() == 3)
            adjust(out.triple_strata, div, -1);
        for (auto i : div)
            adjust(out.pair_strata, {ei, i}, 1);
        for_each_combination(div.size(), 2, [&](const std::vector<std::size_t>& s) {
            adjust(out.triple_strata, {ei, div[s[0]], div[s[1]]}, 1);
            return true;
        });
    } else {
        const auto i = div[0], j = div[1];
        adjust(out.pair_strata, div, -1);
        adjust(out.pair_strata, {ei, i}, 1);
        adjust(out.pair_strata, {ei, j}, 1);
        if (comp == 0) {
            for (std::size_t k = 0; k < cfg.divisors.size(); ++k) {
                if (k == i || k == j)
                    continue;
                long t = cfg.triple_count(i, j, k);
                if (t == 0)
                    continue;
                if (t > 1)
                    throw PreconditionError("several triple points on one curve component with the same divisor");
                adjust(out.triple_strata, {i, j, k}, -1);
                adjust(out.pair_strata, {ei, k}, 1);
                adjust(out.triple_strata, {ei, i, k}, 1);
                adjust(out.triple_strata, {ei, j, k}, 1);
            }
        }
    }
    for (auto& s : out.pair_strata)
        std::sort(s.divisors.begin(), s.divisors.end());
    for (auto& s : out.triple_strata)
        std::sort(s.divisors.begin(), s.divisors.end());
    out.validate();

    ValuationRecord rec;
    rec.name = e.name;
    rec.discrepancy = e.discrepancy;
    rec.multiplicity = e.multiplicity;
    rec.depth = 1;
    TrailStep step;
    for (auto i : div)
        step.center.push_back(cfg.divisors[i].name);
    step.codim = codim;
    step.exceptional = e.name;
    rec.trail.push_back(step);
    rec.x_center = {div, stratum ? 1 : 0};
    rec.x_component = center.component;
    rec.weights.assign(div.size(), Integer(1));
    return {std::move(out), std::move(rec)};
}

namespace {

struct Ray {
    ZVector w;
    Rational a;
    std::string name;
};

struct Node {
    std::vector<std::size_t> rays;  // indices into the ray store
    std::size_t newest;
    std::vector<TrailStep> trail;
};

struct LocalStratum {
    std::vector<std::size_t> divisors;
    std::size_t component;
};

std::vector<LocalStratum> expand_strata(const SNCConfig& cfg, const std::vector<Center>& z)
{
    std::set<std::pair<std::vector<std::size_t>, std::size_t>> out;
    auto add_triples_on = [&](std::size_t i, std::size_t j) {
        for (const auto& t : cfg.triple_strata) {
            const auto& v = t.divisors;
            if (std::find(v.begin(), v.end(), i) != v.end() && std::find(v.begin(), v.end(), j) != v.end())
                for (long c = 0; c < t.components; ++c)
                    out.insert({v, static_cast<std::size_t>(c)});
        }
    };
    if (z.empty()) {
        for (const auto& s : cfg.pair_strata)
            for (long c = 0; c < s.components; ++c)
                out.insert({s.divisors, static_cast<std::size_t>(c)});
        for (const auto& s : cfg.triple_strata)
            for (long c = 0; c < s.components; ++c)
                out.insert({s.divisors, static_cast<std::size_t>(c)});
    }
    for (const auto& c : z) {
        auto div = sorted_unique(c.divisors);
        const long comp = static_cast<long>(c.component);
        if (div.size() == 2) {
            if (cfg.pair_count(div[0], div[1]) <= comp)
                throw PreconditionError("Z names a pair stratum that does not exist");
            out.insert({div, c.component});
            if (cfg.dim == 3 && comp == 0)
                add_triples_on(div[0], div[1]);
        } else if (div.size() == 3) {
            if (cfg.dim != 3 || cfg.triple_count(div[0], div[1], div[2]) <= comp)
                throw PreconditionError("Z names a triple point that does not exist");
            out.insert({div, c.component});
        } else {
            throw PreconditionError("Z strata must be pair or triple intersections");
        }
    }
    std::vector<LocalStratum> strata;
    for (const auto& [d, c] : out)
        strata.push_back({d, c});
    return strata;
}

}  // namespace

Enumeration enumerate_low_discrepancy(const SNCConfig& cfg, const std::vector<Center>& z, const Rational& threshold)
{
    cfg.validate();
    if (threshold > 1)
        throw PreconditionError("threshold must be at most 1, got " + to_string(threshold));
    const auto strata = expand_strata(cfg, z);

    Enumeration result;
    result.gap = 1;
    for (const auto& s : strata)
        for (auto i : s.divisors)
            result.gap = std::min(result.gap, 1 + cfg.divisors[i].discrepancy);
    if (strata.empty())
        return result;
    if (result.gap <= 0)
        throw InvariantViolation("nontermination guard: a centre divisor has discrepancy -1, so repeated blow-ups "
                                 "never raise the discrepancy");

    std::size_t counter = 0;
    using OrbitKey = std::tuple<std::vector<std::size_t>, std::size_t, std::vector<std::pair<Rational, Integer>>>;
    std::map<OrbitKey, std::size_t> orbit_index;

    for (const auto& sigma : strata) {
        const std::size_t m = sigma.divisors.size();
        std::vector<Ray> store;
        std::map<ZVector, std::size_t> by_weight;
        for (std::size_t l = 0; l < m; ++l) {
            ZVector w(m, Integer(0));
            w[l] = 1;
            const auto& d = cfg.divisors[sigma.divisors[l]];
            by_weight[w] = store.size();
            store.push_back({w, d.discrepancy, d.name});
        }
        std::set<std::pair<std::vector<std::size_t>, std::size_t>> visited;
        std::deque<std::pair<Node, std::vector<std::size_t>>> queue;  // node, face to blow up
        {
            Node root;
            for (std::size_t l = 0; l < m; ++l)
                root.rays.push_back(l);
            root.newest = m;  // none
            std::vector<std::size_t> face(m);
            for (std::size_t l = 0; l < m; ++l)
                face[l] = l;
            queue.push_back({root, face});
        }

        while (!queue.empty()) {
            auto [node, face] = std::move(queue.front());
            queue.pop_front();

            ZVector w(m, Integer(0));
            Rational a = static_cast<long>(face.size()) - 1;
            TrailStep step;
            step.codim = static_cast<int>(face.size());
            for (auto pos : face) {
                const Ray& r = store[node.rays[pos]];
                for (std::size_t l = 0; l < m; ++l)
                    w[l] += r.w[l];
                a += r.a;
                step.center.push_back(r.name);
            }
            if (a >= threshold)
                continue;
            if (node.newest < m && a - store[node.rays[node.newest]].a < result.gap)
                throw InvariantViolation("blow-up raised the discrepancy by less than the coefficient gap");

            std::size_t ray;
            auto found = by_weight.find(w);
            bool fresh = found == by_weight.end();
            if (fresh) {
                ray = store.size();
                by_weight[w] = ray;
                store.push_back({w, a, fresh_name(cfg, counter)});
            } else {
                ray = found->second;
            }
            step.exceptional = store[ray].name;
            std::vector<TrailStep> trail = node.trail;
            trail.push_back(step);

            if (fresh) {
                ValuationRecord rec;
                rec.name = store[ray].name;
                rec.discrepancy = a;
                rec.multiplicity.assign(cfg.boundary_count(), Integer(0));
                for (std::size_t l = 0; l < m; ++l)
                    for (std::size_t b = 0; b < rec.multiplicity.size(); ++b)
                        rec.multiplicity[b] += w[l] * cfg.divisors[sigma.divisors[l]].multiplicity[b];
                rec.depth = trail.size();
                rec.trail = trail;
                rec.x_center = {sigma.divisors, 1};
                rec.x_component = sigma.component;
                rec.weights = w;

                ++result.total;
                result.max_depth = std::max(result.max_depth, rec.depth);
                if (1 + a < threshold)
                    ++result.generic_families;

                std::vector<std::pair<Rational, Integer>> shape;
                for (std::size_t l = 0; l < m; ++l)
                    shape.emplace_back(cfg.divisors[sigma.divisors[l]].discrepancy, w[l]);
                std::sort(shape.begin(), shape.end());
                OrbitKey key{sigma.divisors, sigma.component, shape};
                auto it = orbit_index.find(key);
                if (it == orbit_index.end()) {
                    orbit_index[key] = result.records.size();
                    result.records.push_back(std::move(rec));
                } else {
                    ++result.records[it->second].orbit_size;
                }
            }

            // Star subdivision: each face ray in turn is replaced by the new ray.
            for (auto pos : face) {
                Node child;
                child.rays = node.rays;
                child.rays[pos] = ray;
                child.newest = pos;
                child.trail = trail;
                auto key = child.rays;
                std::sort(key.begin(), key.end());
                if (!visited.insert({key, ray}).second)
                    continue;
                for (std::size_t size = 2; size <= m; ++size)
                    for_each_combination(m, size, [&](const std::vector<std::size_t>& f) {
                        if (std::find(f.begin(), f.end(), pos) != f.end())
                            queue.push_back({child, f});
                        return true;
                    });
            }
        }
    }

    std::sort(result.records.begin(), result.records.end(), [](const ValuationRecord& x, const ValuationRecord& y) {
        return std::tie(x.x_center.divisors, x.x_component, x.discrepancy, x.weights) <
               std::tie(y.x_center.divisors, y.x_component, y.discrepancy, y.weights);
    });
    return result;
}

Rational rederive_discrepancy(const SNCConfig& cfg, const ValuationRecord& record)
{
    std::map<std::string, Rational> a;
    for (const auto& d : cfg.divisors)
        a[d.name] = d.discrepancy;
    Rational last = 0;
    for (const auto& step : record.trail) {
        last = step.codim - 1;
        for (const auto& n : step.center) {
            auto it = a.find(n);
            if (it == a.end())
                throw InvariantViolation("trail refers to '" + n + "' before it is created");
            last += it->second;
        }
        a[step.exceptional] = last;
    }
    return last;
}

std::string to_string(Singularity s)
{
    switch (s) {
    case Singularity::terminal:
        return "terminal";
    case Singularity::canonical:
        return "canonical";
    case Singularity::klt:
        return "klt";
    case Singularity::lc:
        return "lc";
    case Singularity::none:
        break;
    }
    return "none";
}

SingularityReport classify_singularity(const SNCConfig& cfg)
{
    cfg.validate();
    // First blow-ups: a general point (or curve) on one divisor and the strata.
    Rational low = 1;
    for (const auto& d : cfg.divisors)
        low = std::min(low, 1 + d.discrepancy);
    for (const auto& s : cfg.pair_strata)
        if (s.components > 0)
            low = std::min(low, 1 + cfg.divisors[s.divisors[0]].discrepancy + cfg.divisors[s.divisors[1]].discrepancy);
    for (const auto& s : cfg.triple_strata)
        if (s.components > 0) {
            Rational a = 2;
            for (auto i : s.divisors)
                a += cfg.divisors[i].discrepancy;
            low = std::min(low, a);
        }

    bool below_one = true;
    bool at_most_one = true;
    for (const auto& d : cfg.divisors) {
        below_one = below_one && d.discrepancy > -1;
        at_most_one = at_most_one && d.discrepancy >= -1;
    }
    if (below_one) {
        auto deeper = enumerate_low_discrepancy(cfg, {}, std::min(low, Rational(1)));
        for (const auto& r : deeper.records)
            low = std::min(low, r.discrepancy);
    }

    SingularityReport rep;
    rep.min_discrepancy = low;
    rep.terminal = at_most_one && low > 0;
    rep.canonical = at_most_one && low >= 0;
    rep.klt = below_one && low > -1;
    rep.lc = at_most_one && low >= -1;
    if (rep.terminal)
        rep.type = Singularity::terminal;
    else if (rep.canonical)
        rep.type = Singularity::canonical;
    else if (rep.klt)
        rep.type = Singularity::klt;
    else if (rep.lc)
        rep.type = Singularity::lc;
    return rep;
}

Rational restricted_discrepancy(long a0, std::span<const Rational> b, std::span<const long> mults, long rho_bound)
{
    if (b.size() != mults.size())
        throw DimensionError("coefficient and multiplicity vectors differ in length");
    if (a0 <= 0 || a0 >= rho_bound)
        throw PreconditionError("a(E, X', 0) = " + std::to_string(a0) + " is outside (0, " +
                                std::to_string(rho_bound) + ")");
    Rational r = a0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (mults[i] < 0)
            throw PreconditionError("negative multiplicity");
        r -= b[i] * mults[i];
    }
    return r;
}

}  // namespace geography
