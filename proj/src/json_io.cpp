#include "geography/json_io.hpp"

#include <limits>

namespace geography::io {

namespace {

const Json& field(const Json& j, const std::string& key)
{
    if (!j.is_object())
        throw ParseError("expected an object holding '" + key + "'");
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError("missing field '" + key + "'");
    return *it;
}

const Json& array_field(const Json& j, const std::string& key)
{
    const Json& a = field(j, key);
    if (!a.is_array())
        throw ParseError("field '" + key + "' must be an array");
    return a;
}

Integer integer_from_json(const Json& j, const std::string& what)
{
    if (j.is_number_integer())
        return Integer(j.get<std::int64_t>());
    if (j.is_number_unsigned())
        return Integer(j.get<std::uint64_t>());
    if (j.is_string()) {
        Rational q = parse_rational(j.get<std::string>());
        if (!is_integer(q))
            throw ParseError("'" + what + "' must be an integer");
        return numerator(q);
    }
    throw ParseError("'" + what + "' must be an integer");
}

long long_from_json(const Json& j, const std::string& what)
{
    Integer z = integer_from_json(j, what);
    if (z > std::numeric_limits<long>::max() || z < std::numeric_limits<long>::min())
        throw ParseError("'" + what + "' is out of range");
    return z.convert_to<long>();
}

bool bool_field(const Json& j, const std::string& key, bool fallback)
{
    if (!j.contains(key))
        return fallback;
    const Json& b = j.at(key);
    if (!b.is_boolean())
        throw ParseError("field '" + key + "' must be a boolean");
    return b.get<bool>();
}

std::string string_from_json(const Json& j, const std::string& what)
{
    if (!j.is_string())
        throw ParseError("'" + what + "' must be a string");
    return j.get<std::string>();
}

Json names(const std::vector<std::string>& v)
{
    Json a = Json::array();
    for (const auto& s : v)
        a.push_back(s);
    return a;
}

Json vertices_json(const std::vector<QVector>& vs)
{
    Json a = Json::array();
    for (const auto& v : vs)
        a.push_back(to_json(v));
    return a;
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Integer& z)
{
    if (z <= std::numeric_limits<std::int64_t>::max() && z >= std::numeric_limits<std::int64_t>::min())
        return z.convert_to<std::int64_t>();
    return to_string(z);
}

Json to_json(std::span<const Rational> v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(to_json(x));
    return a;
}

Rational rational_from_json(const Json& j, const std::string& what)
{
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError("'" + what + "': " + e.what());
        }
    }
    if (j.is_number_integer() || j.is_number_unsigned())
        return Rational(integer_from_json(j, what));
    throw ParseError("'" + what + "' must be a rational string \"num/den\"");
}

QVector qvector_from_json(const Json& j, const std::string& what)
{
    if (!j.is_array())
        throw ParseError("'" + what + "' must be an array");
    QVector v;
    for (const auto& x : j)
        v.push_back(rational_from_json(x, what));
    return v;
}

Json to_json(const HPolytope& h)
{
    Json cs = Json::array();
    for (const auto& c : h.constraints()) {
        Json n = Json::array();
        for (const auto& a : c.normal)
            n.push_back(to_json(a));
        cs.push_back({{"normal", n}, {"bound", to_json(c.bound)}});
    }
    Json j{{"dim", h.dim()}, {"constraints", cs}};
    if (!h.bounded())
        j["bounded"] = false;
    return j;
}

HPolytope hpolytope_from_json(const Json& j)
{
    const long dim = long_from_json(field(j, "dim"), "dim");
    if (dim < 0)
        throw ParseError("'dim' must be nonnegative");
    std::vector<Halfspace> cs;
    for (const auto& c : array_field(j, "constraints")) {
        Halfspace h;
        for (const auto& a : array_field(c, "normal"))
            h.normal.push_back(integer_from_json(a, "normal"));
        if (h.normal.size() != static_cast<std::size_t>(dim))
            throw ParseError("constraint normal length differs from 'dim'");
        h.bound = integer_from_json(field(c, "bound"), "bound");
        cs.push_back(std::move(h));
    }
    return HPolytope(static_cast<std::size_t>(dim), std::move(cs), bool_field(j, "bounded", true));
}

Json to_json(const VPolytope& v) { return {{"dim", v.dim}, {"vertices", vertices_json(v.vertices)}}; }

VPolytope vpolytope_from_json(const Json& j)
{
    VPolytope v;
    const long dim = long_from_json(field(j, "dim"), "dim");
    if (dim < 0)
        throw ParseError("'dim' must be nonnegative");
    v.dim = static_cast<std::size_t>(dim);
    for (const auto& x : array_field(j, "vertices")) {
        v.vertices.push_back(qvector_from_json(x, "vertices"));
        if (v.vertices.back().size() != v.dim)
            throw ParseError("vertex length differs from 'dim'");
    }
    return v;
}

Json to_json(const RegionFamily& f)
{
    Json cells = Json::array(), regions = Json::array();
    for (const auto& c : f.cover.cells)
        cells.push_back(to_json(c));
    for (const auto& r : f.regions)
        regions.push_back(to_json(r));
    return {{"ambient", to_json(f.cover.ambient)}, {"cells", cells}, {"regions", regions}};
}

RegionFamily region_family_from_json(const Json& j)
{
    RegionFamily f;
    f.cover.ambient = hpolytope_from_json(field(j, "ambient"));
    for (const auto& c : array_field(j, "cells"))
        f.cover.cells.push_back(hpolytope_from_json(c));
    for (const auto& r : array_field(j, "regions"))
        f.regions.push_back(hpolytope_from_json(r));
    for (const auto& c : f.cover.cells)
        if (c.dim() != f.cover.ambient.dim())
            throw ParseError("cell dimension differs from the ambient");
    for (const auto& r : f.regions)
        if (r.dim() != f.cover.ambient.dim())
            throw ParseError("region dimension differs from the ambient");
    return f;
}

Json to_json(const SurfaceModel& s)
{
    Json g = Json::array();
    for (std::size_t r = 0; r < s.G.rows(); ++r)
        g.push_back(to_json(s.G.row(r)));
    Json curves = Json::array();
    for (const auto& c : s.curves)
        curves.push_back({{"name", c.name}, {"class", to_json(c.cls)}, {"rational", c.rational}});
    return {{"rank", s.rank},
            {"G", g},
            {"K", to_json(s.K)},
            {"chi", to_json(s.chi)},
            {"rational_surface", s.rational_surface},
            {"uniruled", s.uniruled},
            {"curves", curves}};
}

SurfaceModel surface_from_json(const Json& j)
{
    SurfaceModel s;
    const long rank = long_from_json(field(j, "rank"), "rank");
    if (rank < 0)
        throw ParseError("'rank' must be nonnegative");
    s.rank = static_cast<std::size_t>(rank);
    std::vector<QVector> rows;
    for (const auto& r : array_field(j, "G")) {
        rows.push_back(qvector_from_json(r, "G"));
        if (rows.back().size() != s.rank)
            throw ParseError("row of 'G' has the wrong length");
    }
    if (rows.size() != s.rank)
        throw ParseError("'G' must have 'rank' rows");
    s.G = s.rank == 0 ? QMatrix() : QMatrix::from_rows(rows);
    s.K = qvector_from_json(field(j, "K"), "K");
    s.chi = integer_from_json(field(j, "chi"), "chi");
    s.rational_surface = bool_field(j, "rational_surface", false);
    s.uniruled = bool_field(j, "uniruled", false);
    for (const auto& c : array_field(j, "curves"))
        s.curves.push_back({string_from_json(field(c, "name"), "name"), qvector_from_json(field(c, "class"), "class"),
                            bool_field(c, "rational", false)});
    try {
        s.validate();
    } catch (const InvariantViolation& e) {
        throw ParseError(std::string("surface model is inconsistent: ") + e.what());
    }
    return s;
}

Json to_json(const PairConfig& p)
{
    Json j = to_json(p.surface);
    Json b = Json::array();
    for (const auto& t : p.boundary)
        b.push_back({{"curve", t.curve}, {"coeff", to_json(t.coeff)}});
    j["boundary"] = b;
    return j;
}

PairConfig pair_from_json(const Json& j)
{
    PairConfig p;
    p.surface = surface_from_json(j);
    if (j.contains("boundary"))
        for (const auto& t : array_field(j, "boundary"))
            p.boundary.push_back(
                {string_from_json(field(t, "curve"), "curve"), rational_from_json(field(t, "coeff"), "coeff")});
    try {
        p.validate();
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("pair is inconsistent: ") + e.what());
    }
    return p;
}

Json to_json(const SNCConfig& c)
{
    Json divs = Json::array();
    for (const auto& d : c.divisors) {
        Json dj{{"name", d.name}, {"coeff", to_json(d.coeff)}};
        if (d.origin == DivisorOrigin::exceptional) {
            Json mult = Json::array();
            for (const auto& m : d.multiplicity)
                mult.push_back(to_json(m));
            dj["origin"] = "exceptional";
            dj["discrepancy"] = to_json(d.discrepancy);
            dj["depth"] = d.depth;
            dj["multiplicity"] = mult;
        }
        divs.push_back(dj);
    }
    auto strata = [](const std::vector<SNCStratum>& ss) {
        Json a = Json::array();
        for (const auto& s : ss)
            a.push_back({{"divisors", s.divisors}, {"components", s.components}});
        return a;
    };
    return {{"dim", c.dim}, {"divisors", divs}, {"pair_strata", strata(c.pair_strata)},
            {"triple_strata", strata(c.triple_strata)}};
}

SNCConfig snc_from_json(const Json& j)
{
    SNCConfig c;
    c.dim = static_cast<int>(long_from_json(field(j, "dim"), "dim"));
    const auto& divs = array_field(j, "divisors");
    std::size_t nb = 0;
    for (const auto& d : divs)
        if (!d.contains("origin") || d.at("origin") == "boundary")
            ++nb;
    std::size_t bi = 0;
    for (const auto& d : divs) {
        SNCDivisor x;
        x.name = string_from_json(field(d, "name"), "name");
        x.coeff = rational_from_json(field(d, "coeff"), "coeff");
        std::string origin = d.contains("origin") ? string_from_json(d.at("origin"), "origin") : "boundary";
        if (origin == "boundary") {
            x.origin = DivisorOrigin::boundary;
            x.discrepancy = -x.coeff;
            x.multiplicity.assign(nb, Integer(0));
            x.multiplicity[bi++] = 1;
        } else if (origin == "exceptional") {
            x.origin = DivisorOrigin::exceptional;
            x.discrepancy = rational_from_json(field(d, "discrepancy"), "discrepancy");
            x.depth = static_cast<std::size_t>(long_from_json(field(d, "depth"), "depth"));
            for (const auto& m : array_field(d, "multiplicity"))
                x.multiplicity.push_back(integer_from_json(m, "multiplicity"));
        } else {
            throw ParseError("divisor origin must be 'boundary' or 'exceptional'");
        }
        c.divisors.push_back(std::move(x));
    }
    auto strata = [&](const std::string& key) {
        std::vector<SNCStratum> out;
        if (!j.contains(key))
            return out;
        for (const auto& s : array_field(j, key)) {
            SNCStratum st;
            for (const auto& i : array_field(s, "divisors")) {
                long v = long_from_json(i, "divisors");
                if (v < 0)
                    throw ParseError("divisor index must be nonnegative");
                st.divisors.push_back(static_cast<std::size_t>(v));
            }
            std::sort(st.divisors.begin(), st.divisors.end());
            st.components = s.contains("components") ? long_from_json(s.at("components"), "components") : 1;
            out.push_back(std::move(st));
        }
        return out;
    };
    c.pair_strata = strata("pair_strata");
    c.triple_strata = strata("triple_strata");
    try {
        c.validate();
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("SNC configuration is inconsistent: ") + e.what());
    }
    return c;
}

Json to_json(const DenominatorCertificate& c)
{
    Json vs = Json::array();
    for (const auto& v : c.vertices)
        vs.push_back({{"vertex", to_json(v.vertex)},
                      {"lcm_denominator", to_json(v.lcm_denominator)},
                      {"active_rows", v.active_rows},
                      {"active_det", to_json(v.active_det)},
                      {"divides", v.divides},
                      {"within_bound", v.within_bound}});
    return {{"dim", c.dim},     {"M", to_json(c.M)},   {"eps", to_json(c.eps)},         {"max_entry", to_json(c.max_entry)},
            {"m0", to_json(c.m0)}, {"vertices", vs}, {"certified", c.certified}};
}

Json to_json(const FamilyReport& r)
{
    return {{"dim", r.dim},
            {"k", r.k},
            {"ell", r.ell},
            {"m", r.m},
            {"bound", to_json(r.bound)},
            {"J", r.J},
            {"J_not_interior", r.J_not_interior},
            {"regions_upward_closed", r.regions_upward_closed},
            {"r0_connected", r.r0_connected},
            {"r0_downward_closed", r.r0_downward_closed},
            {"ell_within_bound", r.ell_within_bound},
            {"face_recursion", r.face_recursion},
            {"pass", r.pass}};
}

Json to_json(const CensusReport& r)
{
    Json j{{"count", r.count}, {"c1_squared", to_json(r.c1_squared)}, {"c2", to_json(r.c2)}, {"A1", to_json(r.A1)}};
    j["A2"] = r.A2 ? to_json(*r.A2) : Json(nullptr);
    j["A"] = to_json(r.A);
    j["pass"] = r.pass;
    return j;
}

Json to_json(const ZariskiOutcome& z)
{
    if (const auto* np = std::get_if<NotPseudoeffective>(&z))
        return {{"pseudoeffective", false}, {"reason", np->reason}};
    const auto& r = std::get<ZariskiResult>(z);
    Json n = Json::array();
    for (const auto& [name, c] : r.N)
        n.push_back({{"curve", name}, {"coeff", to_json(c)}});
    return {{"pseudoeffective", true}, {"P", to_json(r.P)}, {"N", n}};
}

Json to_json(const MMPTrace& t)
{
    Json steps = Json::array();
    for (const auto& s : t.steps)
        steps.push_back({{"rank", s.before.surface.rank},
                         {"curve", s.curve},
                         {"value", to_json(s.value)},
                         {"discrepancy", to_json(s.discrepancy)},
                         {"log_discrepancy", to_json(s.log_discrepancy)}});
    Json j{{"steps", steps},
           {"outcome", t.outcome == MMPOutcome::log_terminal_model ? "log_terminal_model" : "not_pseudoeffective"}};
    if (!t.reason.empty())
        j["reason"] = t.reason;
    j["fingerprint"] = names(t.fingerprint);
    j["final"] = to_json(t.final_pair);
    return j;
}

Json to_json(const Geography& g, const TerminalReport& r)
{
    Json walls = Json::array();
    for (const auto& wb : r.wall_bounds) {
        const auto& w = wb.wall;
        Json n = Json::array();
        for (const auto& a : w.hyperplane.normal)
            n.push_back(to_json(a));
        walls.push_back({{"curve", w.curve},
                         {"normal", n},
                         {"bound", to_json(w.hyperplane.bound)},
                         {"alpha", to_json(w.alpha)},
                         {"beta", to_json(w.beta)},
                         {"within_bounds", wb.within_bounds}});
    }
    Json chambers = Json::array();
    for (std::size_t i = 0; i < g.chambers.size(); ++i) {
        const auto& c = g.chambers[i];
        Json cells = Json::array();
        for (auto idx : c.cells)
            cells.push_back(vertices_json(g.cells[idx].vertices));
        const auto& d = r.chambers[i];
        chambers.push_back({{"fingerprint", names(c.fingerprint)},
                            {"cells", cells},
                            {"vertices", vertices_json(c.vertices)},
                            {"lcm_denominator", to_json(c.lcm_denominator)},
                            {"convex", c.convex},
                            {"terminal", c.terminal},
                            {"M", to_json(d.M)},
                            {"m0", to_json(d.certificate.m0)},
                            {"certified", d.certificate.certified}});
    }
    std::size_t not_psef = 0;
    for (const auto& c : g.cells)
        if (!c.pseudoeffective)
            ++not_psef;
    return {{"V", names(g.V)},
            {"eps", to_json(g.eps)},
            {"walls", walls},
            {"chambers", chambers},
            {"not_pseudoeffective_cells", not_psef},
            {"terminal_count", r.terminal_count},
            {"chamber_count", r.chamber_count},
            {"max_denominator", to_json(r.max_denominator)},
            {"k", to_json(r.k)},
            {"certified", r.certified}};
}

Json to_json(const Enumeration& e)
{
    Json records = Json::array();
    for (const auto& r : e.records) {
        Json trail = Json::array();
        for (const auto& s : r.trail)
            trail.push_back({{"center", names(s.center)}, {"codim", s.codim}, {"exceptional", s.exceptional}});
        Json mult = Json::array(), w = Json::array();
        for (const auto& m : r.multiplicity)
            mult.push_back(to_json(m));
        for (const auto& x : r.weights)
            w.push_back(to_json(x));
        records.push_back({{"name", r.name},
                           {"discrepancy", to_json(r.discrepancy)},
                           {"multiplicity", mult},
                           {"depth", r.depth},
                           {"x_center", r.x_center.divisors},
                           {"x_component", r.x_component},
                           {"weights", w},
                           {"orbit_size", r.orbit_size},
                           {"trail", trail}});
    }
    return {{"records", records},
            {"total", e.total},
            {"max_depth", e.max_depth},
            {"gap", to_json(e.gap)},
            {"generic_families", e.generic_families}};
}

Json to_json(const SingularityReport& r)
{
    return {{"type", to_string(r.type)}, {"terminal", r.terminal}, {"canonical", r.canonical},
            {"klt", r.klt},             {"lc", r.lc},              {"min_discrepancy", to_json(r.min_discrepancy)}};
}

Json parse(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace geography::io
