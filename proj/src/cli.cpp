#include "geography/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "geography/checks.hpp"
#include "geography/fixtures.hpp"
#include "geography/json_io.hpp"

namespace geography {

namespace {

using io::Json;

const std::map<std::string, std::function<Json()>>& builtin_fixtures()
{
    static const std::map<std::string, std::function<Json()>> table = {
        {"p2", [] { return io::to_json(fixtures::projective_plane()); }},
        {"blp2", [] { return io::to_json(fixtures::blown_up_plane()); }},
        {"blp2-half-e",
         [] { return io::to_json(PairConfig{fixtures::blown_up_plane(), {{"E", Rational(1, 2)}}}); }},
        {"iterated-3", [] { return io::to_json(fixtures::iterated_blowup_plane(3)); }},
        {"example-1", [] { return io::to_json(fixtures::example_one(5)); }},
        {"example-1-pair",
         [] { return io::to_json(PairConfig{fixtures::example_one(5), {{"S", Rational(1, 10)}, {"E", Rational(1, 10)}}}); }},
        {"hirzebruch-8", [] { return io::to_json(fixtures::hirzebruch(8)); }},
        {"hirzebruch-8-pair",
         [] {
             return io::to_json(PairConfig{fixtures::hirzebruch(8), {{"A", Rational(1, 2)}, {"E", Rational(1, 2)}}});
         }},
        {"ruled-g2-r3", [] { return io::to_json(fixtures::ruled_census(2, 3)); }},
        {"quintic-r3", [] { return io::to_json(fixtures::quintic_census(3)); }},
        {"two-curves", [] { return io::to_json(fixtures::two_curves(Rational(3, 5), Rational(3, 5))); }},
        {"triple-point",
         [] { return io::to_json(fixtures::triple_point(Rational(3, 5), Rational(3, 5), Rational(3, 5))); }},
        {"interval-half", [] { return io::to_json(HPolytope(1, {{{2}, 1}, {{-1}, -1}})); }},
        {"grid-2x2",
         [] {
             RegionFamily f;
             f.cover.ambient = HPolytope::unit_cube(2);
             f.cover.cells = arrangement_cells(f.cover.ambient, {{{2, 0}, 1}, {{0, 2}, 1}});
             f.regions = {HPolytope(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, 0}, -1}, {{0, -1}, -1}, {{2, 0}, 1}})};
             return io::to_json(f);
         }},
        {"suite-all",
         [] {
             Json names = Json::array();
             for (const auto& n : checks::check_names())
                 names.push_back(n);
             return Json{{"checks", names}};
         }},
        {"suite-example-1", [] { return Json{{"checks", {"example-1"}}}; }},
        {"suite-empty", [] { return Json{{"checks", Json::array()}}; }},
    };
    return table;
}

Json read_input(const std::string& path, const std::string& fixture)
{
    if (!fixture.empty()) {
        if (!path.empty())
            throw PreconditionError("give either an input file or --fixture, not both");
        auto it = builtin_fixtures().find(fixture);
        if (it == builtin_fixtures().end())
            throw PreconditionError("unknown fixture '" + fixture + "'");
        return it->second();
    }
    if (path.empty())
        throw PreconditionError("an input file or --fixture is required");
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return io::parse(ss.str());
}

void render_text(const Json& j, std::ostream& out, const std::string& indent = "")
{
    if (!j.is_object()) {
        out << indent << j.dump() << "\n";
        return;
    }
    for (const auto& [key, value] : j.items()) {
        if (value.is_string())
            out << indent << key << ": " << value.get<std::string>() << "\n";
        else if (value.is_object()) {
            out << indent << key << ":\n";
            render_text(value, out, indent + "  ");
        } else
            out << indent << key << ": " << value.dump() << "\n";
    }
}

std::vector<std::size_t> parse_indices(const std::string& text, std::size_t& component)
{
    std::string body = text;
    component = 0;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        body = text.substr(0, colon);
        try {
            component = std::stoul(text.substr(colon + 1));
        } catch (const std::exception&) {
            throw ParseError("bad component in center '" + text + "'");
        }
    }
    std::vector<std::size_t> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            long v = std::stol(item, &used);
            if (used != item.size() || v < 0)
                throw std::invalid_argument(item);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw ParseError("bad divisor index in center '" + text + "'");
        }
    }
    return out;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact geography of log models, base loci and low-discrepancy valuations", "geography"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json";
    std::string eps_text = "1/10";
    std::string threshold_text = "1";
    std::uint64_t seed = 0;
    bool require_psef = false;
    std::string fixture;
    std::string input;

    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", seed, "Seed for randomized runs");
    app.add_flag("--require-psef", require_psef, "Exit 3 when K + Δ is not pseudoeffective");
    app.add_option("--fixture", fixture, "Use a built-in fixture instead of an input file");
    app.add_option("--eps", eps_text, "Coefficient margin p/q");

    auto* vertices = app.add_subcommand("polytope-vertices", "Vertices of an H-polytope");
    auto* cert = app.add_subcommand("denominator-certificate", "Certify vertex denominators against m0");
    std::string m_text;
    cert->add_option("--M", m_text, "Coefficient bound M")->required();
    auto* chambers = app.add_subcommand("chambers-verify", "Check a region family against the cell bound");
    auto* mmp = app.add_subcommand("surface-mmp", "Run the log MMP on a surface pair");
    bool shuffle = false;
    mmp->add_flag("--shuffle", shuffle, "Pick among eligible curves with --seed");
    auto* zar = app.add_subcommand("surface-zariski", "Zariski decomposition of K + Δ");
    auto* geo = app.add_subcommand("surface-geography", "Chambers of log terminal models");
    std::vector<std::string> v_names;
    geo->add_option("--V", v_names, "Boundary curves spanning the coefficient space")
        ->delimiter(',')
        ->allow_extra_args(false);
    auto* val = app.add_subcommand("valuations-enumerate", "Valuations with discrepancy below a threshold");
    std::vector<std::string> centers;
    val->add_option("--threshold", threshold_text, "Discrepancy threshold p/q");
    val->add_option("--center", centers, "Stratum i,j or i,j,k with optional :component")
        ->allow_extra_args(false);
    auto* verify = app.add_subcommand("verify-bounds", "Run a suite of named checks");
    auto* exporter = app.add_subcommand("fixtures-export", "Write the built-in fixtures as JSON files");
    std::string export_dir;
    exporter->add_option("dir", export_dir, "Target directory")->required();

    for (auto* sub : {vertices, cert, chambers, mmp, zar, geo, val, verify})
        sub->add_option("input", input, "Input JSON file");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, x;
        int code = app.exit(e, o, x);
        out << o.str();
        err << x.str();
        return code == 0 ? exit_ok : exit_malformed;
    }

    auto emit = [&](const Json& report) {
        if (format == "text")
            render_text(report, out);
        else
            out << report.dump(2) << "\n";
    };

    try {
        const Rational eps = parse_rational(eps_text);
        if (*vertices) {
            HPolytope h = io::hpolytope_from_json(read_input(input, fixture));
            auto v = enumerate_vertices(h);
            Json r = io::to_json(v);
            r["dimension"] = polytope_dimension(h);
            emit(r);
            return exit_ok;
        }
        if (*cert) {
            HPolytope h = io::hpolytope_from_json(read_input(input, fixture));
            Rational m = parse_rational(m_text);
            if (!is_integer(m))
                throw PreconditionError("--M must be an integer");
            auto c = denominator_certificate(h, numerator(m), eps);
            emit(io::to_json(c));
            return c.certified ? exit_ok : exit_invariant;
        }
        if (*chambers) {
            RegionFamily f = io::region_family_from_json(read_input(input, fixture));
            auto cover = validate_cover(f.cover);
            Json r;
            r["cover"] = {{"cells_inside", cover.cells_inside},
                          {"interiors_disjoint", cover.interiors_disjoint},
                          {"cell_volume_sum", io::to_json(cover.cell_volume_sum)},
                          {"ambient_volume", io::to_json(cover.ambient_volume)},
                          {"valid", cover.valid}};
            if (!cover.valid) {
                emit(r);
                err << "invariant violated: the cells do not cover the ambient polytope\n";
                return exit_invariant;
            }
            auto report = check_region_family(f);
            r["components"] = adjacent_components(f.cover.cells);
            r["family"] = io::to_json(report);
            emit(r);
            if (!report.pass) {
                err << "invariant violated: the cell-count bound or one of its supporting claims fails\n";
                return exit_invariant;
            }
            return exit_ok;
        }
        if (*mmp) {
            PairConfig p = io::pair_from_json(read_input(input, fixture));
            MMPOptions opt;
            if (shuffle)
                opt.shuffle_seed = seed;
            auto t = run_log_mmp(p, opt);
            emit(io::to_json(t));
            if (require_psef && t.outcome == MMPOutcome::not_pseudoeffective) {
                err << "not pseudoeffective: " << t.reason << "\n";
                return exit_not_psef;
            }
            return exit_ok;
        }
        if (*zar) {
            PairConfig p = io::pair_from_json(read_input(input, fixture));
            auto z = zariski(p.surface, p.log_canonical());
            emit(io::to_json(z));
            if (require_psef && std::holds_alternative<NotPseudoeffective>(z)) {
                err << "not pseudoeffective: " << std::get<NotPseudoeffective>(z).reason << "\n";
                return exit_not_psef;
            }
            return exit_ok;
        }
        if (*geo) {
            Json j = read_input(input, fixture);
            SurfaceModel s = io::surface_from_json(j);
            if (v_names.empty() && j.contains("boundary"))
                for (const auto& t : io::pair_from_json(j).boundary)
                    v_names.push_back(t.curve);
            auto g = compute_geography(s, v_names, eps);
            auto rep = terminal_chamber_report(g);
            emit(io::to_json(g, rep));
            if (require_psef && g.chambers.empty()) {
                err << "not pseudoeffective anywhere in the coefficient box\n";
                return exit_not_psef;
            }
            return rep.certified ? exit_ok : exit_invariant;
        }
        if (*val) {
            SNCConfig c = io::snc_from_json(read_input(input, fixture));
            std::vector<Center> z;
            for (const auto& text : centers) {
                Center ctr;
                ctr.divisors = parse_indices(text, ctr.component);
                z.push_back(ctr);
            }
            auto e = enumerate_low_discrepancy(c, z, parse_rational(threshold_text));
            Json r = io::to_json(e);
            r["singularity"] = io::to_json(classify_singularity(c));
            emit(r);
            return exit_ok;
        }
        if (*verify) {
            bool pass = false;
            auto r = checks::run_suite(read_input(input, fixture), seed, pass);
            emit(r);
            return pass ? exit_ok : exit_invariant;
        }
        if (*exporter) {
            std::filesystem::create_directories(export_dir);
            for (const auto& [name, make] : builtin_fixtures()) {
                std::ofstream f(std::filesystem::path(export_dir) / (name + ".json"));
                if (!f)
                    throw PreconditionError("cannot write fixtures into '" + export_dir + "'");
                f << make().dump(2) << "\n";
            }
            emit(Json{{"written", builtin_fixtures().size()}, {"dir", export_dir}});
            return exit_ok;
        }
    } catch (const NotPseudoeffectiveError& e) {
        err << "not pseudoeffective: " << e.what() << "\n";
        return require_psef ? exit_not_psef : exit_invariant;
    } catch (const InvariantViolation& e) {
        err << "invariant violated: " << e.what() << "\n";
        return exit_invariant;
    } catch (const ParseError& e) {
        err << "malformed input: " << e.what() << "\n";
        return exit_malformed;
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << "\n";
        return exit_malformed;
    } catch (const DimensionError& e) {
        err << "dimension mismatch: " << e.what() << "\n";
        return exit_malformed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_invariant;
    }
    return exit_malformed;
}

}  // namespace geography
