#include "geography/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "geography/combinations.hpp"
#include "geography/linalg.hpp"

namespace geography {

Rational Halfspace::slack(std::span<const Rational> x) const
{
    if (x.size() != normal.size())
        throw DimensionError("point of dimension " + std::to_string(x.size()) +
                             " tested against a constraint of dimension " + std::to_string(normal.size()));
    Rational s = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (normal[j] != 0)
            s += Rational(normal[j]) * x[j];
    return s - Rational(bound);
}

std::pair<Halfspace, Integer> clear_denominators(std::span<const Rational> normal, const Rational& bound)
{
    Integer l = lcm(lcm_denominator(normal), denominator(bound));
    Halfspace h;
    h.normal.reserve(normal.size());
    for (const auto& q : normal)
        h.normal.push_back(numerator(q) * (l / denominator(q)));
    h.bound = numerator(bound) * (l / denominator(bound));
    return {std::move(h), l};
}

Halfspace normalized_halfspace(std::span<const Rational> normal, const Rational& bound)
{
    auto [h, l] = clear_denominators(normal, bound);
    Integer g = boost::multiprecision::abs(h.bound);
    for (const auto& z : h.normal)
        g = gcd(g, z);
    if (g > 1) {
        for (auto& z : h.normal)
            z /= g;
        h.bound /= g;
    }
    return h;
}

HPolytope::HPolytope(std::size_t dim, std::vector<Halfspace> constraints, bool bounded)
    : dim_(dim), constraints_(std::move(constraints)), scale_(constraints_.size(), Integer(1)), bounded_(bounded)
{
    for (std::size_t i = 0; i < constraints_.size(); ++i)
        if (constraints_[i].normal.size() != dim_)
            throw DimensionError("constraint " + std::to_string(i) + " has " +
                                 std::to_string(constraints_[i].normal.size()) + " coefficients, expected " +
                                 std::to_string(dim_));
    if (bounded_ && !recession_cone_is_zero(dim_, constraints_))
        throw PreconditionError("polytope declared bounded has a nonzero recession cone");
}

HPolytope HPolytope::from_rational(std::size_t dim, const std::vector<std::pair<QVector, Rational>>& constraints,
                                   bool bounded)
{
    std::vector<Halfspace> hs;
    ZVector scale;
    for (const auto& [normal, bound] : constraints) {
        if (normal.size() != dim)
            throw DimensionError("rational constraint of wrong dimension");
        auto [h, l] = clear_denominators(normal, bound);
        hs.push_back(std::move(h));
        scale.push_back(l);
    }
    HPolytope p(dim, std::move(hs), bounded);
    p.scale_ = std::move(scale);
    return p;
}

HPolytope HPolytope::box(const QVector& lo, const QVector& hi)
{
    if (lo.size() != hi.size())
        throw DimensionError("box bounds of different lengths");
    const std::size_t p = lo.size();
    std::vector<std::pair<QVector, Rational>> cs;
    for (std::size_t j = 0; j < p; ++j) {
        QVector e(p, Rational(0));
        e[j] = 1;
        cs.emplace_back(e, lo[j]);
        e[j] = -1;
        cs.emplace_back(e, -hi[j]);
    }
    return from_rational(p, cs);
}

HPolytope HPolytope::unit_cube(std::size_t dim)
{
    return box(QVector(dim, Rational(0)), QVector(dim, Rational(1)));
}

HPolytope HPolytope::empty(std::size_t dim)
{
    if (dim == 0)
        return HPolytope(0, {Halfspace{{}, Integer(1)}});
    HPolytope cube = unit_cube(dim);
    ZVector e(dim, Integer(0));
    e[0] = 1;
    return cube.with(Halfspace{e, Integer(2)});
}

HPolytope HPolytope::assume_bounded(std::size_t dim, std::vector<Halfspace> constraints)
{
    HPolytope h(dim, std::move(constraints), false);
    h.bounded_ = true;
    return h;
}

bool HPolytope::contains(std::span<const Rational> x) const
{
    for (const auto& h : constraints_)
        if (h.slack(x) < 0)
            return false;
    return true;
}

bool HPolytope::contains_strictly(std::span<const Rational> x) const
{
    for (const auto& h : constraints_) {
        bool zero_normal = std::all_of(h.normal.begin(), h.normal.end(), [](const Integer& z) { return z == 0; });
        if (zero_normal) {
            if (h.bound > 0)
                return false;
            continue;
        }
        if (h.slack(x) <= 0)
            return false;
    }
    return true;
}

HPolytope HPolytope::intersect(const HPolytope& other) const
{
    if (other.dim_ != dim_)
        throw DimensionError("intersecting polytopes of dimension " + std::to_string(dim_) + " and " +
                             std::to_string(other.dim_));
    HPolytope out = *this;
    out.constraints_.insert(out.constraints_.end(), other.constraints_.begin(), other.constraints_.end());
    out.scale_.insert(out.scale_.end(), other.scale_.begin(), other.scale_.end());
    out.bounded_ = bounded_ || other.bounded_;
    return out;
}

HPolytope HPolytope::with(const Halfspace& h) const
{
    if (h.normal.size() != dim_)
        throw DimensionError("constraint of wrong dimension");
    HPolytope out = *this;
    out.constraints_.push_back(h);
    out.scale_.emplace_back(1);
    return out;
}

std::vector<QVector> vertices_of_system(std::size_t dim, const std::vector<Halfspace>& constraints)
{
    if (dim == 0) {
        QVector origin;
        for (const auto& h : constraints)
            if (h.bound > 0)
                return {};
        return {origin};
    }
    std::set<QVector> found;
    for_each_combination(constraints.size(), dim, [&](const std::vector<std::size_t>& rows) {
        QMatrix a(dim, dim);
        QVector b(dim);
        for (std::size_t r = 0; r < dim; ++r) {
            const auto& h = constraints[rows[r]];
            for (std::size_t c = 0; c < dim; ++c)
                a(r, c) = Rational(h.normal[c]);
            b[r] = Rational(h.bound);
        }
        auto sol = solve_linear(a, b);
        if (sol.status != SolveStatus::unique)
            return true;
        for (const auto& h : constraints)
            if (h.slack(sol.x) < 0)
                return true;
        found.insert(std::move(sol.x));
        return true;
    });
    return {found.begin(), found.end()};
}

bool recession_cone_is_zero(std::size_t dim, const std::vector<Halfspace>& constraints)
{
    if (dim == 0)
        return true;
    // A nonzero direction d can be scaled into [-1,1]^p with some |d_j| = 1.
    std::vector<Halfspace> base;
    for (const auto& h : constraints)
        base.push_back(Halfspace{h.normal, Integer(0)});
    for (std::size_t j = 0; j < dim; ++j) {
        ZVector e(dim, Integer(0));
        e[j] = 1;
        base.push_back(Halfspace{e, Integer(-1)});
        e[j] = -1;
        base.push_back(Halfspace{e, Integer(-1)});
    }
    for (std::size_t j = 0; j < dim; ++j)
        for (int s : {1, -1}) {
            auto sys = base;
            ZVector e(dim, Integer(0));
            e[j] = s;
            sys.push_back(Halfspace{e, Integer(1)});
            if (!vertices_of_system(dim, sys).empty())
                return false;
        }
    return true;
}

VPolytope enumerate_vertices(const HPolytope& h)
{
    if (!h.bounded())
        throw PreconditionError("vertex enumeration requires a bounded polytope");
    return VPolytope{h.dim(), vertices_of_system(h.dim(), h.constraints())};
}

int polytope_dimension(const HPolytope& h) { return affine_dimension(enumerate_vertices(h).vertices); }

bool full_dimensional(const HPolytope& h) { return polytope_dimension(h) == static_cast<int>(h.dim()); }

HPolytope hull_halfspaces(std::size_t dim, const std::vector<QVector>& points, const std::vector<QVector>& rays)
{
    if (points.empty())
        throw PreconditionError("hull of an empty point set");
    {
        std::vector<QVector> dirs;
        for (std::size_t i = 1; i < points.size(); ++i) {
            QVector d(dim);
            for (std::size_t j = 0; j < dim; ++j)
                d[j] = points[i][j] - points[0][j];
            dirs.push_back(std::move(d));
        }
        dirs.insert(dirs.end(), rays.begin(), rays.end());
        if (rank(dirs, dim) != dim)
            throw DimensionError("hull is not full dimensional");
    }

    const std::size_t np = points.size();
    const std::size_t n = np + rays.size();
    auto generator = [&](std::size_t i) -> const QVector& { return i < np ? points[i] : rays[i - np]; };

    std::set<std::pair<ZVector, Integer>> seen;
    std::vector<Halfspace> facets;
    for_each_combination(n, dim, [&](const std::vector<std::size_t>& subset) {
        if (subset.front() >= np)
            return true;  // needs at least one point; points come first
        const QVector& base = points[subset.front()];
        std::vector<QVector> rows;
        for (std::size_t t = 1; t < subset.size(); ++t) {
            std::size_t g = subset[t];
            if (g < np) {
                QVector d(dim);
                for (std::size_t j = 0; j < dim; ++j)
                    d[j] = points[g][j] - base[j];
                rows.push_back(std::move(d));
            } else {
                rows.push_back(generator(g));
            }
        }
        QMatrix m = rows.empty() ? QMatrix(0, dim) : QMatrix::from_rows(rows);
        auto ns = nullspace(m);
        if (ns.size() != 1)
            return true;
        QVector a = ns.front();
        Rational b = dot(a, base);
        bool ge = true, le = true;
        for (std::size_t i = 0; i < np && (ge || le); ++i) {
            Rational v = dot(a, points[i]) - b;
            ge = ge && v >= 0;
            le = le && v <= 0;
        }
        for (const auto& r : rays) {
            Rational v = dot(a, r);
            ge = ge && v >= 0;
            le = le && v <= 0;
        }
        if (!ge && !le)
            return true;
        if (!ge) {
            for (auto& x : a)
                x = -x;
            b = -b;
        }
        Halfspace h = normalized_halfspace(a, b);
        if (seen.emplace(h.normal, h.bound).second)
            facets.push_back(std::move(h));
        return true;
    });
    if (rays.empty())
        return HPolytope::assume_bounded(dim, std::move(facets));
    return HPolytope(dim, std::move(facets), false);
}

HPolytope to_hpolytope(const VPolytope& v) { return hull_halfspaces(v.dim, v.vertices); }

QVector barycenter(const std::vector<QVector>& vertices)
{
    if (vertices.empty())
        throw PreconditionError("barycenter of an empty set");
    QVector c(vertices.front().size(), Rational(0));
    for (const auto& v : vertices)
        for (std::size_t j = 0; j < c.size(); ++j)
            c[j] += v[j];
    for (auto& x : c)
        x /= static_cast<long>(vertices.size());
    return c;
}

std::vector<std::size_t> tight_constraints(const HPolytope& h, std::span<const Rational> x)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < h.constraints().size(); ++i)
        if (h.constraints()[i].slack(x) == 0)
            out.push_back(i);
    return out;
}

HPolytope remove_redundant(const HPolytope& h)
{
    auto verts = enumerate_vertices(h).vertices;
    const int p = static_cast<int>(h.dim());
    if (affine_dimension(verts) != p)
        throw DimensionError("remove_redundant requires a full-dimensional polytope");
    std::set<std::pair<ZVector, Integer>> seen;
    std::vector<Halfspace> kept;
    for (const auto& c : h.constraints()) {
        std::vector<QVector> on;
        for (const auto& v : verts)
            if (c.slack(v) == 0)
                on.push_back(v);
        if (affine_dimension(on) != p - 1)
            continue;
        Halfspace n = normalized_halfspace(to_rational(c.normal), Rational(c.bound));
        if (seen.emplace(n.normal, n.bound).second)
            kept.push_back(std::move(n));
    }
    return HPolytope::assume_bounded(h.dim(), std::move(kept));
}

namespace {

using Face = std::vector<std::size_t>;  // sorted vertex indices

struct FaceLattice {
    const std::vector<QVector>& vertices;
    std::vector<std::set<std::size_t>> tight;  // per vertex
    std::size_t constraint_count;
    std::map<Face, std::vector<Face>> triangulations_;

    int face_dim(const Face& f) const
    {
        std::vector<QVector> pts;
        for (auto i : f)
            pts.push_back(vertices[i]);
        return affine_dimension(pts);
    }

    std::vector<Face> facets(const Face& f, int k) const
    {
        std::set<Face> out;
        for (std::size_t c = 0; c < constraint_count; ++c) {
            Face g;
            for (auto v : f)
                if (tight[v].count(c))
                    g.push_back(v);
            if (g.size() == f.size() || static_cast<int>(g.size()) < k)
                continue;
            if (face_dim(g) == k - 1)
                out.insert(std::move(g));
        }
        return {out.begin(), out.end()};
    }

    const std::vector<Face>& triangulate(const Face& f, int k)
    {
        auto it = triangulations_.find(f);
        if (it != triangulations_.end())
            return it->second;
        std::vector<Face> simplices;
        if (k == 0) {
            simplices.push_back({f.front()});
        } else {
            std::size_t apex = f.front();
            for (const auto& g : facets(f, k)) {
                if (std::find(g.begin(), g.end(), apex) != g.end())
                    continue;
                for (auto s : triangulate(g, k - 1)) {
                    s.push_back(apex);
                    simplices.push_back(std::move(s));
                }
            }
        }
        return triangulations_.emplace(f, std::move(simplices)).first->second;
    }
};

}  // namespace

Rational volume(const HPolytope& h)
{
    auto verts = enumerate_vertices(h).vertices;
    const std::size_t p = h.dim();
    if (affine_dimension(verts) != static_cast<int>(p))
        return 0;
    FaceLattice lattice{verts, {}, h.constraints().size(), {}};
    lattice.tight.resize(verts.size());
    for (std::size_t v = 0; v < verts.size(); ++v)
        for (auto c : tight_constraints(h, verts[v]))
            lattice.tight[v].insert(c);
    Face all(verts.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;

    Rational total = 0;
    Integer fact = 1;
    for (std::size_t i = 2; i <= p; ++i)
        fact *= static_cast<unsigned long>(i);
    for (const auto& s : lattice.triangulate(all, static_cast<int>(p))) {
        QMatrix m(p, p);
        for (std::size_t r = 0; r < p; ++r)
            for (std::size_t c = 0; c < p; ++c)
                m(r, c) = verts[s[r]][c] - verts[s[p]][c];
        total += boost::multiprecision::abs(det_exact(m));
    }
    return total / Rational(fact);
}

Integer hadamard_m0(std::size_t p, const Integer& M, const Rational& eps)
{
    if (p == 0)
        return 1;
    Integer max_entry = ceil(Rational(M) * static_cast<unsigned long>(p) / eps) - 1;
    // (√p · e)^p = sqrt(p^p · e^{2p})
    Integer radicand = boost::multiprecision::pow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned>(p)) *
                       boost::multiprecision::pow(max_entry, static_cast<unsigned>(2 * p));
    return boost::multiprecision::sqrt(radicand);
}

DenominatorCertificate denominator_certificate(const HPolytope& h, const Integer& M, const Rational& eps)
{
    if (!(eps > 0 && eps < 1))
        throw PreconditionError("eps must lie in (0, 1), got " + to_string(eps));
    if (M < 1)
        throw PreconditionError("M must be a positive integer, got " + M.str());
    const auto& cs = h.constraints();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        for (std::size_t j = 0; j < cs[i].normal.size(); ++j)
            if (cs[i].normal[j] < -M)
                throw PreconditionError("constraint " + std::to_string(i) + ": coefficient alpha_" +
                                        std::to_string(i) + std::to_string(j) + " = " + cs[i].normal[j].str() +
                                        " is below -M = " + (-M).str());
        if (boost::multiprecision::abs(cs[i].bound) >= M)
            throw PreconditionError("constraint " + std::to_string(i) + ": |beta| = " +
                                    boost::multiprecision::abs(cs[i].bound).str() + " is not below M = " + M.str());
    }

    const std::size_t p = h.dim();
    DenominatorCertificate cert;
    cert.dim = p;
    cert.M = M;
    cert.eps = eps;
    cert.max_entry = ceil(Rational(M) * static_cast<unsigned long>(p) / eps) - 1;
    cert.m0 = hadamard_m0(p, M, eps);
    cert.certified = true;

    for (const auto& v : enumerate_vertices(h).vertices) {
        bool in_box = std::all_of(v.begin(), v.end(), [&](const Rational& x) { return x >= eps && x <= 1; });
        if (!in_box)
            continue;
        VertexCertificate vc;
        vc.vertex = v;
        vc.lcm_denominator = lcm_denominator(v);

        std::vector<QVector> chosen;
        for (auto i : tight_constraints(h, v)) {
            chosen.push_back(to_rational(cs[i].normal));
            if (rank(chosen, p) == chosen.size())
                vc.active_rows.push_back(i);
            else
                chosen.pop_back();
            if (chosen.size() == p)
                break;
        }
        if (vc.active_rows.size() != p)
            throw InvariantViolation("vertex " + to_string(v) + " has fewer than p independent active constraints");
        vc.active_det = boost::multiprecision::abs(numerator(det_exact(QMatrix::from_rows(chosen))));
        vc.divides = vc.active_det % vc.lcm_denominator == 0;
        vc.within_bound = vc.lcm_denominator <= cert.m0 && vc.active_det <= cert.m0;
        cert.certified = cert.certified && vc.divides && vc.within_bound;
        cert.vertices.push_back(std::move(vc));
    }
    return cert;
}

}  // namespace geography
