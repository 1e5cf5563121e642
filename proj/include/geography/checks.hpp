#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "geography/json_io.hpp"

// Seeded experiments behind verify-bounds and the acceptance run.
namespace geography::checks {

struct CheckResult {
    std::string name;
    bool pass = false;
    io::Json witness;
};

/// A bounded H-polytope in [0,1]^p with random extra constraints obeying
/// α ≥ -M, |β| < M and |α| < Mp/ε, together with its M and ε.
struct RandomCertificateCase {
    HPolytope polytope;
    Integer M;
    Rational eps;
};

/// p ∈ {1,2,3}, M ∈ {2,3}, ε ∈ {1/2, 1/3, 1/4}. Redraws the extra rows until the
/// polytope is full-dimensional.
RandomCertificateCase random_certificate_case(std::mt19937_64& rng);

struct CertificateSuite {
    std::size_t polytopes = 0;
    std::size_t vertices_checked = 0;
    std::size_t failures = 0;
    Integer max_denominator = 1;
};

CertificateSuite run_certificate_suite(std::size_t count, std::uint64_t seed);

struct FamilySuite {
    std::size_t families = 0;
    std::size_t failures = 0;
    std::size_t max_ell = 0;
    std::vector<FamilyReport> failing;
};

/// Random families with p ≤ 3, k ≤ 3 and up to two extra cuts.
FamilySuite run_family_suite(std::size_t count, std::uint64_t seed);

/// The t with (K + tS)·E = 0 on the Example-1 model, where E leaves the base locus.
Rational example_one_threshold(long s);

/// Names accepted by run_check.
const std::vector<std::string>& check_names();

/// Runs one named check. Throws PreconditionError on an unknown name.
CheckResult run_check(const std::string& name, std::uint64_t seed);

/// Runs a suite document: {"checks": [names]} or a bare array of names.
io::Json run_suite(const io::Json& suite, std::uint64_t seed, bool& all_pass);

}  // namespace geography::checks
