#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geography/polytope.hpp"
#include "geography/surface.hpp"

namespace geography {

struct MMPStep {
    /// Model and boundary just before the contraction.
    PairConfig before;
    std::string curve;
    /// (K+Δ)·C, always negative.
    Rational value;
    /// a(C, Y, 0) = K·C / C² for the contraction X → Y.
    Rational discrepancy;
    /// a(C, Y, Δ_Y) = (K+Δ)·C / C² - coeff_Δ(C).
    Rational log_discrepancy;
};

enum class MMPOutcome { log_terminal_model, not_pseudoeffective };

struct MMPTrace {
    std::vector<MMPStep> steps;
    MMPOutcome outcome = MMPOutcome::log_terminal_model;
    std::string reason;
    PairConfig final_pair;
    /// Sorted names of the contracted curves.
    std::vector<std::string> fingerprint;
};

struct MMPOptions {
    /// Picks uniformly among eligible curves instead of the lowest index.
    std::optional<std::uint64_t> shuffle_seed;
};

/// Contracts (K+Δ)-negative curves with C² < 0 until none remain.
MMPTrace run_log_mmp(const PairConfig& cfg, const MMPOptions& options = {});

/// The pair on S with boundary Σ a_i V_i.
PairConfig pair_at(const SurfaceModel& s, const std::vector<std::string>& v, std::span<const Rational> a);

/// [lo, hi]^p.
HPolytope coefficient_box(std::size_t p, const Rational& lo, const Rational& hi);

/// The hyperplane Σ α_i a_i = β where α_i = V_i·C and β = -K·C on some model.
struct Wall {
    /// Primitive integer form, first nonzero normal entry positive.
    Halfspace hyperplane;
    std::string curve;
    QVector alpha;
    Rational beta;
};

/// Hyperplanes (K_T + Σ a_i V_i^T)·C = 0 met strictly inside the domain, over
/// every model T reachable by contracting negative curves that can be
/// (K+Δ)-negative somewhere in the domain. Deduplicated by hyperplane; the
/// first model found (fewest contractions, then name order) supplies α and β.
std::vector<Wall> collect_walls(const SurfaceModel& s, const std::vector<std::string>& v,
                                     const HPolytope& domain);

struct GeographyCell {
    HPolytope polytope;
    std::vector<QVector> vertices;
    QVector sample;  // barycenter
    bool pseudoeffective = false;
    std::vector<std::string> fingerprint;
};

struct Chamber {
    std::vector<std::string> fingerprint;
    std::vector<std::size_t> cells;
    /// Vertices of the convex hull of the chamber's cells.
    std::vector<QVector> vertices;
    HPolytope hull;
    Integer lcm_denominator;
    /// Hull volume equals the sum of cell volumes.
    bool convex = false;
    /// Some cell meets L_ε^can in a full-dimensional set.
    bool terminal = false;
};

struct Geography {
    SurfaceModel surface;
    std::vector<std::string> V;
    Rational eps;
    HPolytope domain;  // L_ε(V)
    std::vector<Wall> walls;
    std::vector<GeographyCell> cells;
    std::vector<Chamber> chambers;
    HPolytope canonical;  // L_ε^can(V)
};

/// Cells of the wall arrangement in L_ε(V), each classified by a log MMP run at
/// its barycenter; pseudoeffective cells are merged by fingerprint.
Geography compute_geography(const SurfaceModel& s, const std::vector<std::string>& v, const Rational& eps);

/// Coefficient vectors in [0,1]^p with K + Σ a_i V_i pseudoeffective, as the
/// hull of the pseudoeffective arrangement cells; HPolytope::empty when none.
HPolytope pseudoeffective_region(const SurfaceModel& s, const std::vector<std::string>& v);

/// L_ε(V) cut by a_i + a_j ≤ 1 for every pair of boundary curves that meet.
HPolytope canonical_region(const SurfaceModel& s, const std::vector<std::string>& v, const Rational& eps);

struct WallBound {
    Wall wall;
    /// min α_j ≥ -2k and -2k ≤ β ≤ 2.
    bool within_bounds = false;
};

struct ChamberDenominators {
    std::vector<std::string> fingerprint;
    Integer lcm_denominator;
    Integer M;
    DenominatorCertificate certificate;
};

struct TerminalReport {
    std::size_t terminal_count = 0;
    std::size_t chamber_count = 0;
    Integer max_denominator;
    std::vector<ChamberDenominators> chambers;
    /// k = denominator of eps/2.
    Integer k;
    std::vector<WallBound> wall_bounds;
    bool certified = false;
};

/// Terminal chamber count, vertex denominators certified against the
/// extreme-point bound, and the wall coefficient bounds ξ² ≥ -2k, -2k ≤ β ≤ 2.
TerminalReport terminal_chamber_report(const Geography& geo);

/// Fingerprint of the log terminal model at a, or nullopt when not pseudoeffective.
std::optional<std::vector<std::string>> classify_point(const SurfaceModel& s, const std::vector<std::string>& v,
                                                       std::span<const Rational> a);

/// Midpoints of barycenters of same-fingerprint cells classify to that fingerprint.
bool chambers_midpoint_convex(const Geography& geo);

}  // namespace geography
