#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "geography/rational.hpp"

namespace geography {

/// ⟨normal, x⟩ ≥ bound with integer data.
struct Halfspace {
    ZVector normal;
    Integer bound;

    Rational slack(std::span<const Rational> x) const;  // ⟨normal, x⟩ - bound
    friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// A polyhedron given by integer half-spaces. Rational input is cleared to
/// integers per constraint; the multiplier used is kept in scale_factors().
///
/// When constructed as bounded (the default) the recession cone is checked to
/// be {0}. An empty system whose recession cone is nonzero is therefore
/// rejected as unbounded; use HPolytope::empty() for an empty polytope.
class HPolytope {
public:
    HPolytope() = default;
    HPolytope(std::size_t dim, std::vector<Halfspace> constraints, bool bounded = true);

    static HPolytope from_rational(std::size_t dim,
                                   const std::vector<std::pair<QVector, Rational>>& constraints,
                                   bool bounded = true);
    /// { lo ≤ x ≤ hi } coordinatewise.
    static HPolytope box(const QVector& lo, const QVector& hi);
    static HPolytope unit_cube(std::size_t dim);
    static HPolytope empty(std::size_t dim);
    /// Bounded polytope whose boundedness the caller already knows (not re-verified).
    static HPolytope assume_bounded(std::size_t dim, std::vector<Halfspace> constraints);

    std::size_t dim() const { return dim_; }
    const std::vector<Halfspace>& constraints() const { return constraints_; }
    /// Multiplier applied to each constraint when clearing rational input (1 for integer input).
    const ZVector& scale_factors() const { return scale_; }
    bool bounded() const { return bounded_; }

    bool contains(std::span<const Rational> x) const;
    /// Strict inequality in every constraint with a nonzero normal.
    bool contains_strictly(std::span<const Rational> x) const;

    HPolytope intersect(const HPolytope& other) const;
    HPolytope with(const Halfspace& h) const;

private:
    std::size_t dim_ = 0;
    std::vector<Halfspace> constraints_;
    ZVector scale_;
    bool bounded_ = true;
};

/// Clears ⟨normal, x⟩ ≥ bound to integers (multiplying by the lcm of the
/// denominators) and returns the multiplier alongside.
std::pair<Halfspace, Integer> clear_denominators(std::span<const Rational> normal, const Rational& bound);

/// Like clear_denominators, then divides by the gcd of all entries.
Halfspace normalized_halfspace(std::span<const Rational> normal, const Rational& bound);

struct VPolytope {
    std::size_t dim = 0;
    std::vector<QVector> vertices;

    bool empty() const { return vertices.empty(); }
};

/// Exhaustive search over p-subsets of constraints: each nonsingular subset
/// gives a candidate point, kept when it satisfies every half-space.
/// Vertices are returned sorted lexicographically without duplicates.
VPolytope enumerate_vertices(const HPolytope& h);

/// Same search without the boundedness requirement. Only meaningful for
/// systems known to be bounded; used internally to probe auxiliary systems.
std::vector<QVector> vertices_of_system(std::size_t dim, const std::vector<Halfspace>& constraints);

/// True when the recession cone {d : ⟨α_i, d⟩ ≥ 0 ∀i} is {0}.
bool recession_cone_is_zero(std::size_t dim, const std::vector<Halfspace>& constraints);

/// Affine dimension of the polytope, -1 if empty.
int polytope_dimension(const HPolytope& h);
bool full_dimensional(const HPolytope& h);

/// H-representation of conv(points) + cone(rays). The result must be full
/// dimensional; facets are found by enumerating generator subsets.
HPolytope hull_halfspaces(std::size_t dim, const std::vector<QVector>& points,
                          const std::vector<QVector>& rays = {});

HPolytope to_hpolytope(const VPolytope& v);

/// Exact p-dimensional volume by pulling triangulation of the face lattice.
Rational volume(const HPolytope& h);

/// Average of the vertices; an interior point of a full-dimensional polytope.
QVector barycenter(const std::vector<QVector>& vertices);

/// Drops duplicate and non-facet constraints of a full-dimensional polytope.
HPolytope remove_redundant(const HPolytope& h);

/// Indices of the constraints tight at x.
std::vector<std::size_t> tight_constraints(const HPolytope& h, std::span<const Rational> x);

struct VertexCertificate {
    QVector vertex;
    Integer lcm_denominator;
    /// p linearly independent active constraint rows and |det| of that submatrix.
    std::vector<std::size_t> active_rows;
    Integer active_det;
    bool divides = false;   // lcm_denominator | active_det
    bool within_bound = false;  // lcm_denominator ≤ m0
};

struct DenominatorCertificate {
    std::size_t dim = 0;
    Integer M;
    Rational eps;
    /// Largest admissible |entry|: ⌈M p / eps⌉ - 1.
    Integer max_entry;
    /// ⌊(√p · max_entry)^p⌋, a Hadamard bound on |det| of admissible p×p matrices.
    Integer m0;
    std::vector<VertexCertificate> vertices;  // vertices lying in [eps, 1]^p
    bool certified = false;
};

/// Hadamard-style bound on |det| for p×p integer matrices with entries in
/// [-M, Mp/eps).
Integer hadamard_m0(std::size_t p, const Integer& M, const Rational& eps);

/// Certifies that every vertex of H in [eps, 1]^p has lcm denominator ≤ m0.
/// Throws PreconditionError naming the first constraint with α_ij < -M or |β_i| ≥ M.
DenominatorCertificate denominator_certificate(const HPolytope& h, const Integer& M, const Rational& eps);

}  // namespace geography
