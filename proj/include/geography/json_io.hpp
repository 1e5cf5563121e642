#pragma once

#include <json.hpp>

#include "geography/chamber.hpp"
#include "geography/mmp.hpp"
#include "geography/polytope.hpp"
#include "geography/surface.hpp"
#include "geography/valuations.hpp"

// JSON documents for inputs and reports. Rationals are "num/den" strings
// (integers written as JSON numbers are accepted on input). Readers throw
// ParseError naming the offending field.
namespace geography::io {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& q);
Json to_json(const Integer& z);
Json to_json(std::span<const Rational> v);
Rational rational_from_json(const Json& j, const std::string& field);
QVector qvector_from_json(const Json& j, const std::string& field);

Json to_json(const HPolytope& h);
HPolytope hpolytope_from_json(const Json& j);
Json to_json(const VPolytope& v);
VPolytope vpolytope_from_json(const Json& j);

Json to_json(const RegionFamily& f);
RegionFamily region_family_from_json(const Json& j);

Json to_json(const SurfaceModel& s);
SurfaceModel surface_from_json(const Json& j);
Json to_json(const PairConfig& p);
PairConfig pair_from_json(const Json& j);

Json to_json(const SNCConfig& c);
SNCConfig snc_from_json(const Json& j);

Json to_json(const DenominatorCertificate& c);
Json to_json(const FamilyReport& r);
Json to_json(const CensusReport& r);
Json to_json(const ZariskiOutcome& z);
Json to_json(const MMPTrace& t);
Json to_json(const Geography& g, const TerminalReport& r);
Json to_json(const Enumeration& e);
Json to_json(const SingularityReport& r);

/// Parses text, mapping syntax errors to ParseError.
Json parse(const std::string& text);

}  // namespace geography::io
