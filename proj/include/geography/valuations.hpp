#pragma once

#include <string>
#include <vector>

#include "geography/rational.hpp"

namespace geography {

enum class DivisorOrigin { boundary, exceptional };

struct SNCDivisor {
    std::string name;
    /// Boundary coefficient; 0 for exceptional divisors.
    Rational coeff;
    /// a(D, X, Δ); equals -coeff on boundary divisors.
    Rational discrepancy;
    DivisorOrigin origin = DivisorOrigin::boundary;
    /// Blow-ups needed to realize the divisor; 0 on boundary divisors.
    std::size_t depth = 0;
    /// mult_D S_i over the boundary divisors, in boundary order.
    ZVector multiplicity;

    friend bool operator==(const SNCDivisor&, const SNCDivisor&) = default;
};

/// Divisors meeting along `components` irreducible strata (points on a
/// surface, curves on a threefold for pairs; points for triples).
struct SNCStratum {
    std::vector<std::size_t> divisors;  // sorted
    long components = 1;

    friend bool operator==(const SNCStratum&, const SNCStratum&) = default;
};

/// Combinatorial incidence data of a simple normal crossing pair.
///
/// Every triple point of D_i ∩ D_j ∩ D_k lies on component 0 of each of the
/// three pair curves.
struct SNCConfig {
    int dim = 2;
    std::vector<SNCDivisor> divisors;
    std::vector<SNCStratum> pair_strata;
    std::vector<SNCStratum> triple_strata;

    /// Config with boundary divisors only; multiplicities are indicator vectors.
    static SNCConfig boundary(int dim, const std::vector<std::pair<std::string, Rational>>& divisors,
                              const std::vector<SNCStratum>& pairs, const std::vector<SNCStratum>& triples = {});

    std::size_t boundary_count() const;
    long pair_count(std::size_t i, std::size_t j) const;
    long triple_count(std::size_t i, std::size_t j, std::size_t k) const;
    /// Throws PreconditionError on malformed data.
    void validate() const;

    friend bool operator==(const SNCConfig&, const SNCConfig&) = default;
};

/// A blow-up center: the intersection of the listed divisors, a component of
/// it when it is a stratum, and whether it is a curve (threefolds only).
/// Fewer divisors than the codimension means a general point or curve on them.
struct Center {
    std::vector<std::size_t> divisors;
    std::size_t component = 0;
    bool curve = false;
};

struct TrailStep {
    std::vector<std::string> center;  // divisors containing the blown-up stratum
    int codim = 2;
    std::string exceptional;

    friend bool operator==(const TrailStep&, const TrailStep&) = default;
};

struct ValuationRecord {
    std::string name;
    Rational discrepancy;
    /// mult_E S_i over the boundary divisors.
    ZVector multiplicity;
    std::size_t depth = 1;
    std::vector<TrailStep> trail;
    /// Stratum of the input configuration the valuation is centred on.
    SNCStratum x_center;
    std::size_t x_component = 0;
    /// Monomial weights over x_center's divisors.
    ZVector weights;
    /// Number of valuations obtained by permuting weights among centre divisors
    /// with equal discrepancy; this record stands for all of them.
    std::size_t orbit_size = 1;
};

/// Blows up the center: a(E) = codim - 1 + Σ_{D ⊇ center} a(D). Incidence is
/// updated combinatorially. Throws PreconditionError when the center is not
/// in the configuration.
std::pair<SNCConfig, ValuationRecord> blowup_discrepancy(const SNCConfig& cfg, const Center& center);

struct Enumeration {
    /// One record per orbit, sorted by centre, discrepancy and weights.
    std::vector<ValuationRecord> records;
    /// Distinct valuations, Σ orbit_size.
    std::size_t total = 0;
    std::size_t max_depth = 0;
    /// min over centre divisors of 1 + a(D); each step raises a by at least this.
    Rational gap;
    /// Recorded E whose general point, blown up, still has 1 + a(E) < threshold.
    /// Each stands for a positive-dimensional family and is not enumerated.
    std::size_t generic_families = 0;
};

/// Every valuation centred on a stratum of Z (or a stratum contained in one)
/// and reached by blowing up strata, with discrepancy below the threshold.
/// Empty Z means every stratum. Throws PreconditionError when threshold > 1
/// and InvariantViolation (nontermination guard) when the gap is not positive.
/// Z lists strata as centers: two divisors for a pair stratum, three for a
/// triple point, with the component index.
Enumeration enumerate_low_discrepancy(const SNCConfig& cfg, const std::vector<Center>& z,
                                      const Rational& threshold);

/// Replays the trail from the input configuration's discrepancies.
Rational rederive_discrepancy(const SNCConfig& cfg, const ValuationRecord& record);

enum class Singularity { terminal, canonical, klt, lc, none };

std::string to_string(Singularity s);

struct SingularityReport {
    /// First of terminal, canonical, klt, lc that holds.
    Singularity type = Singularity::none;
    bool terminal = false;
    bool canonical = false;
    bool klt = false;
    bool lc = false;
    /// Smallest discrepancy over exceptional divisors, capped at 1.
    Rational min_discrepancy;
};

/// Strongest class of the log smooth pair.
SingularityReport classify_singularity(const SNCConfig& cfg);

/// a0 - Σ b_i mults_i. Throws PreconditionError unless 0 < a0 < rho_bound.
Rational restricted_discrepancy(long a0, std::span<const Rational> b, std::span<const long> mults, long rho_bound);

}  // namespace geography
