#include "geography/mmp.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "geography/chamber.hpp"

namespace geography {

namespace {

std::vector<std::string> sorted(std::vector<std::string> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

MMPTrace run_log_mmp(const PairConfig& cfg, const MMPOptions& options)
{
    cfg.validate();
    std::mt19937_64 rng(options.shuffle_seed.value_or(0));
    MMPTrace trace;
    PairConfig cur = cfg;
    std::vector<std::string> contracted;

    while (true) {
        const auto& s = cur.surface;
        QVector l = cur.log_canonical();
        std::vector<std::size_t> eligible;
        for (std::size_t i = 0; i < s.curves.size(); ++i) {
            const auto& c = s.curves[i].cls;
            if (s.dot(l, c) < 0 && s.dot(c, c) < 0)
                eligible.push_back(i);
        }
        if (eligible.empty())
            break;
        std::size_t pick = eligible.front();
        if (options.shuffle_seed)
            pick = eligible[rng() % eligible.size()];

        const Curve& c = s.curves[pick];
        MMPStep step;
        step.before = cur;
        step.curve = c.name;
        step.value = s.dot(l, c.cls);
        Rational self = s.dot(c.cls, c.cls);
        step.discrepancy = s.dot(s.K, c.cls) / self;
        step.log_discrepancy = step.value / self - cur.coefficient(c.name);

        PairConfig next;
        next.surface = contract(s, c.name);
        for (const auto& t : cur.boundary)
            if (t.curve != c.name)
                next.boundary.push_back(t);
        if (next.surface.rank >= s.rank)
            throw InvariantViolation("contraction did not lower the rank");
        contracted.push_back(c.name);
        trace.steps.push_back(std::move(step));
        cur = std::move(next);
    }

    const auto& s = cur.surface;
    QVector l = cur.log_canonical();
    trace.outcome = MMPOutcome::log_terminal_model;
    for (const auto& c : s.curves)
        if (s.dot(l, c.cls) < 0) {
            trace.outcome = MMPOutcome::not_pseudoeffective;
            trace.reason = "K + Δ is negative on '" + c.name + "' with C² >= 0";
            break;
        }
    if (trace.outcome == MMPOutcome::log_terminal_model && !nef_class_is_psef(s, l)) {
        trace.outcome = MMPOutcome::not_pseudoeffective;
        trace.reason = "K + Δ is nef on tracked curves but not pseudoeffective";
    }
    trace.final_pair = std::move(cur);
    trace.fingerprint = sorted(std::move(contracted));
    return trace;
}

PairConfig pair_at(const SurfaceModel& s, const std::vector<std::string>& v, std::span<const Rational> a)
{
    if (v.size() != a.size())
        throw DimensionError("coefficient vector length differs from the number of boundary curves");
    PairConfig cfg;
    cfg.surface = s;
    for (std::size_t i = 0; i < v.size(); ++i)
        cfg.boundary.push_back({v[i], a[i]});
    cfg.validate();
    return cfg;
}

HPolytope coefficient_box(std::size_t p, const Rational& lo, const Rational& hi)
{
    return HPolytope::box(QVector(p, lo), QVector(p, hi));
}

namespace {

void check_boundary(const SurfaceModel& s, const std::vector<std::string>& v)
{
    if (v.empty())
        throw PreconditionError("the boundary list V is empty");
    std::set<std::string> seen;
    for (const auto& name : v) {
        if (!s.find_curve(name))
            throw PreconditionError("boundary curve '" + name + "' is not tracked");
        if (!seen.insert(name).second)
            throw PreconditionError("boundary curve '" + name + "' is listed twice");
    }
}

void check_eps(const Rational& eps)
{
    if (eps <= 0 || eps >= Rational(1, 2))
        throw PreconditionError("eps must lie in (0, 1/2), got " + to_string(eps));
}

// Hyperplane with primitive integer data and positive leading normal entry.
Halfspace oriented_hyperplane(std::span<const Rational> alpha, const Rational& beta)
{
    Halfspace h = normalized_halfspace(alpha, beta);
    for (const auto& x : h.normal)
        if (x != 0) {
            if (x < 0) {
                for (auto& y : h.normal)
                    y = -y;
                h.bound = -h.bound;
            }
            break;
        }
    return h;
}

struct WallState {
    SurfaceModel model;
    std::vector<QVector> v;  // boundary classes pushed to the model
    std::set<std::string> contracted;
};

}  // namespace

std::vector<Wall> collect_walls(const SurfaceModel& s, const std::vector<std::string>& v, const HPolytope& domain)
{
    check_boundary(s, v);
    const std::size_t p = v.size();
    if (domain.dim() != p)
        throw DimensionError("domain dimension differs from the number of boundary curves");
    auto corners = enumerate_vertices(domain).vertices;
    if (corners.empty())
        return {};

    std::vector<Wall> walls;
    std::set<std::pair<ZVector, Integer>> seen_walls;
    std::set<std::set<std::string>> seen_states;

    std::vector<WallState> frontier;
    WallState start{s, {}, {}};
    for (const auto& name : v)
        start.v.push_back(s.curve(name).cls);
    frontier.push_back(std::move(start));
    seen_states.insert({});

    // Breadth first, so walls come from the model with the fewest contractions.
    while (!frontier.empty()) {
        std::vector<WallState> next;
        for (const auto& st : frontier) {
            const auto& t = st.model;
            for (const auto& c : t.curves) {
                QVector alpha(p);
                bool constant = true;
                for (std::size_t i = 0; i < p; ++i) {
                    alpha[i] = t.dot(st.v[i], c.cls);
                    constant = constant && alpha[i] == 0;
                }
                Rational kc = t.dot(t.K, c.cls);
                Rational lo = 0, hi = 0;
                bool first = true;
                for (const auto& x : corners) {
                    Rational f = kc + dot(alpha, x);
                    if (first || f < lo)
                        lo = f;
                    if (first || f > hi)
                        hi = f;
                    first = false;
                }
                if (!constant && lo < 0 && hi > 0) {
                    Halfspace h = oriented_hyperplane(alpha, -kc);
                    if (seen_walls.insert({h.normal, h.bound}).second)
                        walls.push_back({h, c.name, alpha, -kc});
                }
                if (lo < 0 && t.dot(c.cls, c.cls) < 0) {
                    auto key = st.contracted;
                    key.insert(c.name);
                    if (!seen_states.insert(key).second)
                        continue;
                    WallState child;
                    child.model = contract(t, c.name);
                    for (const auto& cls : st.v)
                        child.v.push_back(pushforward(t, c.name, cls));
                    child.contracted = std::move(key);
                    next.push_back(std::move(child));
                }
            }
        }
        frontier = std::move(next);
    }
    return walls;
}

namespace {

std::vector<Halfspace> hyperplanes_of(const std::vector<Wall>& walls)
{
    std::vector<Halfspace> out;
    for (const auto& w : walls)
        out.push_back(w.hyperplane);
    return out;
}

std::vector<GeographyCell> classify_cells(const SurfaceModel& s, const std::vector<std::string>& v,
                                          const HPolytope& domain, const std::vector<Wall>& walls)
{
    std::vector<GeographyCell> cells;
    for (auto& poly : arrangement_cells(domain, hyperplanes_of(walls))) {
        GeographyCell cell;
        cell.vertices = enumerate_vertices(poly).vertices;
        cell.sample = barycenter(cell.vertices);
        cell.polytope = std::move(poly);
        auto trace = run_log_mmp(pair_at(s, v, cell.sample));
        cell.pseudoeffective = trace.outcome == MMPOutcome::log_terminal_model;
        if (cell.pseudoeffective)
            cell.fingerprint = trace.fingerprint;
        cells.push_back(std::move(cell));
    }
    return cells;
}

}  // namespace

HPolytope canonical_region(const SurfaceModel& s, const std::vector<std::string>& v, const Rational& eps)
{
    check_boundary(s, v);
    check_eps(eps);
    const std::size_t p = v.size();
    HPolytope region = coefficient_box(p, eps, 1 - eps);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            if (s.dot(s.curve(v[i]).cls, s.curve(v[j]).cls) > 0) {
                ZVector normal(p, Integer(0));
                normal[i] = -1;
                normal[j] = -1;
                region = region.with({normal, -1});
            }
    return region;
}

Geography compute_geography(const SurfaceModel& s, const std::vector<std::string>& v, const Rational& eps)
{
    check_boundary(s, v);
    check_eps(eps);
    Geography geo;
    geo.surface = s;
    geo.V = v;
    geo.eps = eps;
    const std::size_t p = v.size();
    geo.domain = coefficient_box(p, eps, 1 - eps);
    geo.walls = collect_walls(s, v, geo.domain);
    geo.cells = classify_cells(s, v, geo.domain, geo.walls);
    geo.canonical = canonical_region(s, v, eps);

    std::map<std::vector<std::string>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < geo.cells.size(); ++i)
        if (geo.cells[i].pseudoeffective)
            groups[geo.cells[i].fingerprint].push_back(i);

    for (auto& [fp, idx] : groups) {
        Chamber ch;
        ch.fingerprint = fp;
        ch.cells = idx;
        std::vector<QVector> pts;
        Rational cell_volume = 0;
        for (auto i : idx) {
            const auto& cell = geo.cells[i];
            pts.insert(pts.end(), cell.vertices.begin(), cell.vertices.end());
            cell_volume += volume(cell.polytope);
            if (full_dimensional(cell.polytope.intersect(geo.canonical)))
                ch.terminal = true;
        }
        ch.hull = hull_halfspaces(p, pts);
        ch.vertices = enumerate_vertices(ch.hull).vertices;
        ch.convex = volume(ch.hull) == cell_volume;
        ch.lcm_denominator = 1;
        for (const auto& x : ch.vertices)
            ch.lcm_denominator = lcm(ch.lcm_denominator, lcm_denominator(x));
        geo.chambers.push_back(std::move(ch));
    }
    return geo;
}

HPolytope pseudoeffective_region(const SurfaceModel& s, const std::vector<std::string>& v)
{
    check_boundary(s, v);
    const std::size_t p = v.size();
    HPolytope cube = HPolytope::unit_cube(p);
    auto cells = classify_cells(s, v, cube, collect_walls(s, v, cube));
    std::vector<QVector> pts;
    for (const auto& c : cells)
        if (c.pseudoeffective)
            pts.insert(pts.end(), c.vertices.begin(), c.vertices.end());
    if (pts.empty())
        return HPolytope::empty(p);
    return hull_halfspaces(p, pts);
}

std::optional<std::vector<std::string>> classify_point(const SurfaceModel& s, const std::vector<std::string>& v,
                                                       std::span<const Rational> a)
{
    auto trace = run_log_mmp(pair_at(s, v, a));
    if (trace.outcome != MMPOutcome::log_terminal_model)
        return std::nullopt;
    return trace.fingerprint;
}

bool chambers_midpoint_convex(const Geography& geo)
{
    for (const auto& ch : geo.chambers)
        for (std::size_t i = 0; i < ch.cells.size(); ++i)
            for (std::size_t j = i + 1; j < ch.cells.size(); ++j) {
                const auto& x = geo.cells[ch.cells[i]].sample;
                const auto& y = geo.cells[ch.cells[j]].sample;
                QVector mid(x.size());
                for (std::size_t k = 0; k < x.size(); ++k)
                    mid[k] = (x[k] + y[k]) / 2;
                auto fp = classify_point(geo.surface, geo.V, mid);
                if (!fp || *fp != ch.fingerprint)
                    return false;
            }
    return true;
}

TerminalReport terminal_chamber_report(const Geography& geo)
{
    TerminalReport r;
    r.chamber_count = geo.chambers.size();
    r.max_denominator = 1;
    r.certified = true;
    for (const auto& ch : geo.chambers) {
        if (ch.terminal)
            ++r.terminal_count;
        Integer m = 0;
        for (const auto& h : ch.hull.constraints()) {
            for (const auto& a : h.normal)
                m = std::max(m, Integer(-a));
            m = std::max(m, Integer(boost::multiprecision::abs(h.bound)));
        }
        ChamberDenominators d;
        d.fingerprint = ch.fingerprint;
        d.lcm_denominator = ch.lcm_denominator;
        d.M = m + 1;
        d.certificate = denominator_certificate(ch.hull, d.M, geo.eps);
        r.certified = r.certified && d.certificate.certified;
        r.max_denominator = std::max(r.max_denominator, ch.lcm_denominator);
        r.chambers.push_back(std::move(d));
    }
    r.k = denominator(geo.eps / 2);
    const Rational two_k(2 * r.k);
    for (const auto& w : geo.walls) {
        Rational min_alpha = w.alpha.empty() ? Rational(0) : *std::min_element(w.alpha.begin(), w.alpha.end());
        bool ok = min_alpha >= -two_k && w.beta >= -two_k && w.beta <= 2;
        r.wall_bounds.push_back({w, ok});
    }
    return r;
}

}  // namespace geography
