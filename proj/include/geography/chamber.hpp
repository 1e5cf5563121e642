#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "geography/polytope.hpp"

namespace geography {

/// A finite cover of an ambient polytope by full-dimensional cells with
/// pairwise disjoint interiors.
struct PolytopeCover {
    HPolytope ambient;
    std::vector<HPolytope> cells;
};

/// A cover together with marked regions P_1..P_k inside the ambient polytope.
struct RegionFamily {
    PolytopeCover cover;
    std::vector<HPolytope> regions;
};

/// P1 ∩ P2 is a codimension-one face of both.
bool are_adjacent(const HPolytope& p1, const HPolytope& p2);

/// Connected components of the adjacency graph, each sorted, ordered by
/// smallest member.
std::vector<std::vector<std::size_t>> adjacent_components(const std::vector<HPolytope>& cells);

/// (P + R_+^p) ∩ Q ⊆ P. Throws PreconditionError unless P ⊆ Q.
bool is_upward_closed(const HPolytope& p, const HPolytope& q);

/// Cell membership per region, decided at each cell's barycenter.
/// inside[c][i] is true when cell c lies in region i.
std::vector<std::vector<bool>> cell_membership(const RegionFamily& fam);

/// Indices of cells forming the closure of ∪_{i∈I} P_i minus ∪_{j∉I} P_j.
/// I holds 0-based region indices.
std::vector<std::size_t> region_RI(const RegionFamily& fam, const std::vector<std::size_t>& I);

/// Indices of cells forming the closure of Q minus every region.
std::vector<std::size_t> region_R0(const RegionFamily& fam);

/// m · (1 + k·2^k · Σ_{d=1}^{p} (mk)^{2^{d-1}}). Throws on nonpositive input.
Integer bound_M_km(long k, long m, long p);

struct CoverCheck {
    bool cells_inside = true;
    bool interiors_disjoint = true;
    Rational cell_volume_sum;
    Rational ambient_volume;
    bool valid = false;
};

/// Exact check: cells lie in the ambient, pairwise intersections are not
/// full dimensional, and the cell volumes add up to the ambient volume.
CoverCheck validate_cover(const PolytopeCover& cover);

/// Which faces of R_0 count as faces of the union.
enum class FaceReading {
    /// The face lies in the frontier of R_0 inside Q: some cell outside R_0 contains it.
    frontier,
    /// The face is not contained in the interior of R_0 relative to Q: some
    /// cell outside R_0 meets it, possibly only along its boundary.
    not_interior,
};

/// #J_d for d = 1..p, stored at index d-1. J_d is the set of codimension-d
/// faces of R_0's cells that count under the reading and are not contained in
/// the boundary of Q.
std::vector<std::size_t> face_counts_J(const RegionFamily& fam, FaceReading reading = FaceReading::frontier);

/// Full-dimensional cells of the arrangement cut out by the given hyperplanes
/// ⟨normal, x⟩ = bound inside the ambient polytope. Cell constraints are
/// reduced to facets.
std::vector<HPolytope> arrangement_cells(const HPolytope& ambient, const std::vector<Halfspace>& hyperplanes);

struct RandomFamilyOptions {
    std::size_t dim = 2;
    std::size_t regions = 2;
    std::size_t extra_cuts = 0;
};

/// Q = [0,1]^p; each P_i is Q cut by one or two half-spaces with nonnegative
/// normals (hence upward closed); the cover is the arrangement of every
/// defining hyperplane plus optional extra cuts with arbitrary normals.
RegionFamily random_region_family(const RandomFamilyOptions& opt, std::mt19937_64& rng);

struct FamilyReport {
    std::size_t dim = 0;
    std::size_t k = 0;
    std::size_t ell = 0;
    /// Largest adjacent-connected component over every R_I and R_0.
    std::size_t m = 0;
    Integer bound;
    std::vector<std::size_t> J;
    /// J under FaceReading::not_interior; informational.
    std::vector<std::size_t> J_not_interior;
    bool regions_upward_closed = true;
    bool r0_connected = true;
    bool r0_downward_closed = true;
    bool ell_within_bound = true;
    bool face_recursion = true;
    bool pass = false;
};

/// Evaluates the cell-count bound and its supporting claims on one family.
FamilyReport check_region_family(const RegionFamily& fam);

}  // namespace geography
