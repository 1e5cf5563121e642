#include "geography/chamber.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "geography/linalg.hpp"

namespace geography {

namespace {

std::vector<QVector> sorted_unique(std::vector<QVector> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// The face of P cut by a constraint tight on every point of `on`, or nullopt.
std::optional<std::vector<QVector>> supporting_face(const HPolytope& p, const std::vector<QVector>& p_vertices,
                                                    const std::vector<QVector>& on)
{
    for (const auto& c : p.constraints()) {
        bool tight = std::all_of(on.begin(), on.end(), [&](const QVector& v) { return c.slack(v) == 0; });
        if (!tight)
            continue;
        std::vector<QVector> face;
        for (const auto& v : p_vertices)
            if (c.slack(v) == 0)
                face.push_back(v);
        if (affine_dimension(face) == static_cast<int>(p.dim()) - 1)
            return face;
    }
    return std::nullopt;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::vector<std::vector<std::size_t>> components_of(std::size_t n,
                                                    const std::vector<std::pair<std::size_t, std::size_t>>& edges)
{
    UnionFind uf(n);
    for (auto [a, b] : edges)
        uf.unite(a, b);
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i)
        groups[uf.find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [_, g] : groups)
        out.push_back(std::move(g));
    std::sort(out.begin(), out.end());
    return out;
}

bool vertex_sets_adjacent(const HPolytope& p1, const std::vector<QVector>& v1, const HPolytope& p2,
                          const std::vector<QVector>& v2)
{
    auto common = enumerate_vertices(p1.intersect(p2)).vertices;
    if (affine_dimension(common) != static_cast<int>(p1.dim()) - 1)
        return false;
    auto f1 = supporting_face(p1, v1, common);
    auto f2 = supporting_face(p2, v2, common);
    if (!f1 || !f2)
        return false;
    // G ⊆ F always; equal vertex sets mean G = F.
    return sorted_unique(*f1) == common && sorted_unique(*f2) == common;
}

long pow_long_checked(long base, long exp)
{
    long r = 1;
    for (long i = 0; i < exp; ++i)
        r *= base;
    return r;
}

}  // namespace

bool are_adjacent(const HPolytope& p1, const HPolytope& p2)
{
    if (p1.dim() != p2.dim())
        throw DimensionError("adjacency of polytopes in dimensions " + std::to_string(p1.dim()) + " and " +
                             std::to_string(p2.dim()));
    auto v1 = enumerate_vertices(p1).vertices;
    auto v2 = enumerate_vertices(p2).vertices;
    const int p = static_cast<int>(p1.dim());
    if (affine_dimension(v1) != p || affine_dimension(v2) != p)
        throw PreconditionError("adjacency is defined for full-dimensional polytopes");
    return vertex_sets_adjacent(p1, v1, p2, v2);
}

std::vector<std::vector<std::size_t>> adjacent_components(const std::vector<HPolytope>& cells)
{
    std::vector<std::vector<QVector>> verts;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        verts.push_back(enumerate_vertices(cells[i]).vertices);
        if (affine_dimension(verts.back()) != static_cast<int>(cells[i].dim()))
            throw PreconditionError("cell " + std::to_string(i) + " is not full dimensional");
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = i + 1; j < cells.size(); ++j)
            if (vertex_sets_adjacent(cells[i], verts[i], cells[j], verts[j]))
                edges.emplace_back(i, j);
    return components_of(cells.size(), edges);
}

bool is_upward_closed(const HPolytope& p, const HPolytope& q)
{
    if (p.dim() != q.dim())
        throw DimensionError("upward closure across dimensions");
    auto pv = enumerate_vertices(p).vertices;
    for (const auto& v : pv)
        if (!q.contains(v))
            throw PreconditionError("region is not contained in the ambient polytope: vertex " + to_string(v));
    const std::size_t n = p.dim();
    std::vector<QVector> rays;
    for (std::size_t j = 0; j < n; ++j) {
        QVector e(n, Rational(0));
        e[j] = 1;
        rays.push_back(std::move(e));
    }
    HPolytope up = hull_halfspaces(n, pv, rays);
    for (const auto& v : vertices_of_system(n, up.intersect(q).constraints()))
        if (!p.contains(v))
            return false;
    return true;
}

std::vector<std::vector<bool>> cell_membership(const RegionFamily& fam)
{
    std::vector<std::vector<bool>> inside;
    for (const auto& cell : fam.cover.cells) {
        QVector b = barycenter(enumerate_vertices(cell).vertices);
        std::vector<bool> row;
        for (const auto& r : fam.regions)
            row.push_back(r.contains(b));
        inside.push_back(std::move(row));
    }
    return inside;
}

namespace {

std::vector<std::size_t> select_cells(const std::vector<std::vector<bool>>& inside, const std::vector<bool>& in_I)
{
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < inside.size(); ++c) {
        bool some_in = false, none_out = true;
        for (std::size_t i = 0; i < in_I.size(); ++i) {
            if (in_I[i] && inside[c][i])
                some_in = true;
            if (!in_I[i] && inside[c][i])
                none_out = false;
        }
        if (some_in && none_out)
            out.push_back(c);
    }
    return out;
}

std::vector<std::size_t> select_r0(const std::vector<std::vector<bool>>& inside)
{
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < inside.size(); ++c)
        if (std::none_of(inside[c].begin(), inside[c].end(), [](bool b) { return b; }))
            out.push_back(c);
    return out;
}

}  // namespace

std::vector<std::size_t> region_RI(const RegionFamily& fam, const std::vector<std::size_t>& I)
{
    std::vector<bool> in_I(fam.regions.size(), false);
    for (auto i : I) {
        if (i >= fam.regions.size())
            throw PreconditionError("region index " + std::to_string(i) + " out of range");
        in_I[i] = true;
    }
    return select_cells(cell_membership(fam), in_I);
}

std::vector<std::size_t> region_R0(const RegionFamily& fam) { return select_r0(cell_membership(fam)); }

Integer bound_M_km(long k, long m, long p)
{
    if (k < 1 || m < 1 || p < 1)
        throw PreconditionError("bound_M_km needs k, m, p >= 1");
    Integer mk = Integer(m) * k;
    Integer sum = 0;
    for (long d = 1; d <= p; ++d)
        sum += boost::multiprecision::pow(mk, static_cast<unsigned>(pow_long_checked(2, d - 1)));
    Integer two_k = boost::multiprecision::pow(Integer(2), static_cast<unsigned>(k));
    return Integer(m) * (1 + Integer(k) * two_k * sum);
}

CoverCheck validate_cover(const PolytopeCover& cover)
{
    CoverCheck r;
    const int p = static_cast<int>(cover.ambient.dim());
    r.ambient_volume = volume(cover.ambient);
    r.cell_volume_sum = 0;
    for (const auto& c : cover.cells) {
        if (c.dim() != cover.ambient.dim())
            throw DimensionError("cover cell dimension differs from the ambient");
        for (const auto& v : enumerate_vertices(c).vertices)
            if (!cover.ambient.contains(v))
                r.cells_inside = false;
        r.cell_volume_sum += volume(c);
    }
    for (std::size_t i = 0; i < cover.cells.size(); ++i)
        for (std::size_t j = i + 1; j < cover.cells.size(); ++j)
            if (polytope_dimension(cover.cells[i].intersect(cover.cells[j])) == p)
                r.interiors_disjoint = false;
    r.valid = r.cells_inside && r.interiors_disjoint && r.cell_volume_sum == r.ambient_volume;
    return r;
}

namespace {

using VertexSet = std::vector<QVector>;  // sorted

// All faces of the given codimension of a full-dimensional polytope, as vertex sets.
std::vector<std::set<VertexSet>> faces_by_codim(const HPolytope& h, const std::vector<QVector>& verts)
{
    const int p = static_cast<int>(h.dim());
    std::vector<std::set<VertexSet>> out(p + 1);
    out[0].insert(sorted_unique(verts));
    for (int d = 1; d <= p; ++d) {
        for (const auto& f : out[d - 1]) {
            for (const auto& c : h.constraints()) {
                VertexSet g;
                for (const auto& v : f)
                    if (c.slack(v) == 0)
                        g.push_back(v);
                if (g.size() == f.size() || g.empty())
                    continue;
                if (affine_dimension(g) == p - d)
                    out[d].insert(std::move(g));
            }
        }
    }
    return out;
}

}  // namespace

std::vector<std::size_t> face_counts_J(const RegionFamily& fam, FaceReading reading)
{
    const auto& cells = fam.cover.cells;
    const std::size_t p = fam.cover.ambient.dim();
    auto inside = cell_membership(fam);
    auto r0 = select_r0(inside);
    std::vector<bool> in_r0(cells.size(), false);
    for (auto c : r0)
        in_r0[c] = true;

    std::vector<std::vector<QVector>> verts;
    for (const auto& c : cells)
        verts.push_back(enumerate_vertices(c).vertices);

    std::vector<std::set<VertexSet>> faces(p + 1);
    for (auto c : r0) {
        auto f = faces_by_codim(cells[c], verts[c]);
        for (std::size_t d = 1; d <= p; ++d)
            faces[d].insert(f[d].begin(), f[d].end());
    }

    std::vector<std::size_t> J(p, 0);
    for (std::size_t d = 1; d <= p; ++d) {
        for (const auto& f : faces[d]) {
            bool on_boundary = std::any_of(
                fam.cover.ambient.constraints().begin(), fam.cover.ambient.constraints().end(), [&](const Halfspace& h) {
                    return std::all_of(f.begin(), f.end(), [&](const QVector& v) { return h.slack(v) == 0; });
                });
            if (on_boundary)
                continue;
            // In a face-to-face cover every cell meeting f contains a vertex of f,
            // and a cell containing a relative interior point of f contains f.
            bool counted = false;
            for (std::size_t c = 0; c < cells.size() && !counted; ++c) {
                if (in_r0[c])
                    continue;
                auto inside_cell = [&](const QVector& v) { return cells[c].contains(v); };
                counted = reading == FaceReading::frontier ? std::all_of(f.begin(), f.end(), inside_cell)
                                                           : std::any_of(f.begin(), f.end(), inside_cell);
            }
            if (counted)
                ++J[d - 1];
        }
    }
    return J;
}

std::vector<HPolytope> arrangement_cells(const HPolytope& ambient, const std::vector<Halfspace>& hyperplanes)
{
    struct Piece {
        HPolytope h;
        std::vector<QVector> verts;
    };
    auto av = enumerate_vertices(ambient).vertices;
    if (affine_dimension(av) != static_cast<int>(ambient.dim()))
        throw PreconditionError("arrangement ambient must be full dimensional");
    std::vector<Piece> pieces{{remove_redundant(ambient), av}};
    for (const auto& hp : hyperplanes) {
        if (hp.normal.size() != ambient.dim())
            throw DimensionError("hyperplane of wrong dimension");
        std::vector<Piece> next;
        for (auto& piece : pieces) {
            bool above = false, below = false;
            for (const auto& v : piece.verts) {
                Rational s = hp.slack(v);
                above = above || s > 0;
                below = below || s < 0;
            }
            if (!(above && below)) {
                next.push_back(std::move(piece));
                continue;
            }
            ZVector neg = hp.normal;
            for (auto& z : neg)
                z = -z;
            for (const auto& side : {hp, Halfspace{neg, -hp.bound}}) {
                HPolytope half = remove_redundant(piece.h.with(side));
                auto hv = enumerate_vertices(half).vertices;
                next.push_back({std::move(half), std::move(hv)});
            }
        }
        pieces = std::move(next);
    }
    std::vector<HPolytope> out;
    for (auto& piece : pieces)
        out.push_back(std::move(piece.h));
    return out;
}

namespace {

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

}  // namespace

RegionFamily random_region_family(const RandomFamilyOptions& opt, std::mt19937_64& rng)
{
    const std::size_t p = opt.dim;
    if (p < 1 || opt.regions < 1)
        throw PreconditionError("random family needs p >= 1 and k >= 1");
    HPolytope q = HPolytope::unit_cube(p);
    RegionFamily fam;
    std::vector<Halfspace> cuts;
    for (std::size_t i = 0; i < opt.regions; ++i) {
        HPolytope region = q;
        std::size_t count = 1 + pick(rng, 2);
        for (std::size_t c = 0; c < count; ++c) {
            QVector normal(p);
            Rational total = 0;
            do {
                total = 0;
                for (auto& a : normal) {
                    a = static_cast<long>(pick(rng, 3));
                    total += a;
                }
            } while (total == 0);
            long den = 2 + static_cast<long>(pick(rng, 3));
            long top = static_cast<long>(numerator(total * den)) - 1;
            Rational bound = Rational(1 + static_cast<long>(pick(rng, static_cast<std::uint64_t>(top)))) / den;
            Halfspace h = normalized_halfspace(normal, bound);
            region = region.with(h);
            cuts.push_back(h);
        }
        fam.regions.push_back(remove_redundant(region));
    }
    for (std::size_t c = 0; c < opt.extra_cuts; ++c) {
        QVector normal(p), point(p);
        bool nonzero = false;
        for (std::size_t j = 0; j < p; ++j) {
            normal[j] = static_cast<long>(pick(rng, 5)) - 2;
            nonzero = nonzero || normal[j] != 0;
            point[j] = Rational(1 + static_cast<long>(pick(rng, 7)), 8);
        }
        if (!nonzero)
            normal[0] = 1;
        cuts.push_back(normalized_halfspace(normal, dot(normal, point)));
    }
    fam.cover.ambient = q;
    fam.cover.cells = arrangement_cells(q, cuts);
    return fam;
}

FamilyReport check_region_family(const RegionFamily& fam)
{
    FamilyReport r;
    const auto& cells = fam.cover.cells;
    r.dim = fam.cover.ambient.dim();
    r.k = fam.regions.size();
    r.ell = cells.size();

    for (const auto& reg : fam.regions)
        if (!is_upward_closed(reg, fam.cover.ambient))
            r.regions_upward_closed = false;

    auto inside = cell_membership(fam);
    std::vector<std::vector<QVector>> verts;
    std::vector<QVector> centers;
    for (const auto& c : cells) {
        verts.push_back(enumerate_vertices(c).vertices);
        centers.push_back(barycenter(verts.back()));
    }
    std::vector<std::pair<std::size_t, std::size_t>> adjacency;
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = i + 1; j < cells.size(); ++j)
            if (vertex_sets_adjacent(cells[i], verts[i], cells[j], verts[j]))
                adjacency.emplace_back(i, j);

    auto component_sizes = [&](const std::vector<std::size_t>& members) {
        std::vector<std::size_t> local(cells.size(), SIZE_MAX);
        for (std::size_t t = 0; t < members.size(); ++t)
            local[members[t]] = t;
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (auto [a, b] : adjacency)
            if (local[a] != SIZE_MAX && local[b] != SIZE_MAX)
                edges.emplace_back(local[a], local[b]);
        return components_of(members.size(), edges);
    };

    auto r0 = select_r0(inside);
    auto r0_components = component_sizes(r0);
    r.r0_connected = r0_components.size() <= 1;
    for (const auto& comp : r0_components)
        r.m = std::max(r.m, comp.size());
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << r.k); ++mask) {
        std::vector<bool> in_I(r.k);
        for (std::size_t i = 0; i < r.k; ++i)
            in_I[i] = (mask >> i) & 1;
        for (const auto& comp : component_sizes(select_cells(inside, in_I)))
            r.m = std::max(r.m, comp.size());
    }

    std::vector<bool> in_r0(cells.size(), false);
    for (auto c : r0)
        in_r0[c] = true;
    for (auto x : r0)
        for (std::size_t y = 0; y < cells.size(); ++y) {
            bool below = true;
            for (std::size_t j = 0; j < r.dim && below; ++j)
                below = centers[y][j] <= centers[x][j];
            if (below && !in_r0[y])
                r.r0_downward_closed = false;
        }

    r.bound = bound_M_km(static_cast<long>(r.k), static_cast<long>(std::max<std::size_t>(r.m, 1)),
                         static_cast<long>(r.dim));
    r.ell_within_bound = Integer(static_cast<unsigned long>(r.ell)) <= r.bound;
    r.J = face_counts_J(fam, FaceReading::frontier);
    r.J_not_interior = face_counts_J(fam, FaceReading::not_interior);
    if (!r.J.empty() && r.J[0] > r.m * r.k)
        r.face_recursion = false;
    for (std::size_t d = 1; d < r.J.size(); ++d)
        if (r.J[d] > r.J[d - 1] * r.J[d - 1])
            r.face_recursion = false;
    r.pass = r.regions_upward_closed && r.r0_connected && r.r0_downward_closed && r.ell_within_bound &&
             r.face_recursion;
    return r;
}

}  // namespace geography
