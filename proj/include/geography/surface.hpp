#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geography/rational.hpp"

namespace geography {

struct Curve {
    std::string name;
    QVector cls;
    bool rational = false;

    friend bool operator==(const Curve&, const Curve&) = default;
};

/// A surface seen through its numerical lattice: intersection form G, canonical
/// class K and the tracked irreducible curves.
///
/// The tracked list is an input contract: every irreducible negative curve the
/// computations depend on must be listed. The lattice cannot discover curves.
struct SurfaceModel {
    std::size_t rank = 0;
    QMatrix G;
    QVector K;
    std::vector<Curve> curves;
    Integer chi = 1;
    bool rational_surface = false;
    bool uniruled = false;

    Rational dot(std::span<const Rational> a, std::span<const Rational> b) const { return G.bilinear(a, b); }
    Rational c1_squared() const { return dot(K, K); }
    /// Noether: c2 = 12 chi - c1^2.
    Rational c2() const { return Rational(12 * chi) - c1_squared(); }

    std::optional<std::size_t> find_curve(const std::string& name) const;
    const Curve& curve(const std::string& name) const;

    /// Shapes, unique names, Hodge index signature (1, rank-1) and adjunction
    /// for curves with integral numbers. Throws InvariantViolation.
    void validate() const;

    friend bool operator==(const SurfaceModel&, const SurfaceModel&) = default;
};

struct BoundaryTerm {
    std::string curve;
    Rational coeff;

    friend bool operator==(const BoundaryTerm&, const BoundaryTerm&) = default;
};

/// A surface with boundary Δ = Σ coeff · curve, coefficients in [0, 1].
struct PairConfig {
    SurfaceModel surface;
    std::vector<BoundaryTerm> boundary;

    /// Σ coeff · class.
    QVector delta() const;
    /// K + Δ.
    QVector log_canonical() const;
    Rational coefficient(const std::string& curve) const;
    /// Throws PreconditionError on unknown or repeated names or coefficients outside [0, 1].
    void validate() const;

    friend bool operator==(const PairConfig&, const PairConfig&) = default;
};

/// Raised when an operation needs a pseudoeffective class and did not get one.
class NotPseudoeffectiveError : public Error {
public:
    using Error::Error;
};

struct BlowUpOptions {
    /// Name of the exceptional curve; "E<rank+1>" (made unique) when empty.
    std::string exceptional_name;
    /// Accept more than two curves through the point or multiplicities above one.
    bool allow_non_snc = false;
};

/// Blows up a point lying on the named curves with the given multiplicities.
/// Appends the coordinate of E with E² = -1, K' = K + E, C' = C - m_C E.
SurfaceModel blow_up(const SurfaceModel& s, const std::vector<std::pair<std::string, long>>& incidence,
                     const BlowUpOptions& options = {});

/// Coordinates of the pushforward of D under the contraction of curve c, in the
/// basis of the contracted model (see contract()).
QVector pushforward(const SurfaceModel& s, const std::string& c, std::span<const Rational> d);

/// Contracts a tracked curve with C² < 0. The new form is
/// D'·E' = D·E + (D·C)(E·C)/(-C²); a (-1)-curve contraction inverts blow_up.
SurfaceModel contract(const SurfaceModel& s, const std::string& c);

struct ZariskiResult {
    QVector P;
    /// Tracked curves with positive coefficient, in tracked order.
    std::vector<std::pair<std::string, Rational>> N;

    friend bool operator==(const ZariskiResult&, const ZariskiResult&) = default;
};

struct NotPseudoeffective {
    std::string reason;
};

using ZariskiOutcome = std::variant<ZariskiResult, NotPseudoeffective>;

/// Zariski decomposition over the tracked curves. `order` is a permutation of
/// curve indices fixing the scan order; the result does not depend on it.
ZariskiOutcome zariski(const SurfaceModel& s, std::span<const Rational> d,
                       const std::vector<std::size_t>& order = {});

/// True when a class that is nonnegative on every tracked curve is also
/// pseudoeffective: P² ≥ 0 and P meets a positive tracked class nonnegatively.
bool nef_class_is_psef(const SurfaceModel& s, std::span<const Rational> p);

/// Supp N of the Zariski decomposition of K + Δ. Throws NotPseudoeffectiveError.
std::vector<std::string> divisorial_base_locus(const PairConfig& cfg);

/// Tracked curves with P·C = 0 for the positive part P of K + Δ.
/// Throws NotPseudoeffectiveError, or PreconditionError when P² ≤ 0.
std::vector<std::string> augmented_null_curves(const PairConfig& cfg);

struct CensusReport {
    std::size_t count = 0;
    Rational c1_squared;
    Rational c2;
    Rational A1;
    std::optional<Rational> A2;
    Rational A;
    bool pass = false;
};

/// Counts tracked rational curves with C² = K·C = -1 and compares with the
/// bound A (c2, or max(c2, 2(2c2 - c1²)/3) when uniruled).
/// Throws PreconditionError on a rational surface.
CensusReport minus_one_census(const SurfaceModel& s);

}  // namespace geography
