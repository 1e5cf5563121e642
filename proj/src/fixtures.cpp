#include "geography/fixtures.hpp"

namespace geography::fixtures {

SurfaceModel projective_plane()
{
    SurfaceModel s;
    s.rank = 1;
    s.G = QMatrix{{1}};
    s.K = {-3};
    s.curves = {{"L", {1}, true}};
    s.chi = 1;
    s.rational_surface = true;
    s.uniruled = true;
    s.validate();
    return s;
}

SurfaceModel blown_up_plane()
{
    return blow_up(projective_plane(), {{"L", 1}}, {"E"});
}

SurfaceModel iterated_blowup_plane(long depth)
{
    if (depth < 1)
        throw PreconditionError("blow-up depth must be positive");
    SurfaceModel s = blow_up(projective_plane(), {{"L", 1}}, {"E1"});
    for (long k = 2; k <= depth; ++k)
        s = blow_up(s, {{"L", 1}, {"E" + std::to_string(k - 1), 1}}, {"E" + std::to_string(k)});
    return s;
}

SurfaceModel example_one(long s, long k2, long m)
{
    if (m == 0)
        m = s;
    if (s <= 0 || k2 <= 0 || m <= 0)
        throw PreconditionError("example_one needs positive s, k2 and m");
    SurfaceModel x;
    x.rank = 2;
    x.G = QMatrix{{k2, 0}, {0, -1}};
    x.K = {1, 1};
    x.curves = {{"S", {m, -s}, false}, {"E", {0, 1}, true}};
    x.chi = k2 + 1;
    x.validate();
    return x;
}

SurfaceModel hirzebruch(long s)
{
    if (s < 1)
        throw PreconditionError("Hirzebruch index must be positive");
    SurfaceModel x;
    x.rank = 2;
    x.G = QMatrix{{0, 1}, {1, -s}};
    x.K = {-(s + 2), -2};
    x.curves = {{"E", {0, 1}, true}, {"F", {1, 0}, true}, {"A", {4 * s, 4}, false}};
    x.chi = 1;
    x.rational_surface = true;
    x.uniruled = true;
    x.validate();
    return x;
}

SurfaceModel ruled_census(long g, long r)
{
    if (g < 1 || r < 0)
        throw PreconditionError("ruled census needs g >= 1 and r >= 0");
    SurfaceModel x;
    x.rank = 2;
    x.G = QMatrix{{0, 1}, {1, 0}};
    x.K = {-2, 2 * g - 2};
    x.curves = {{"sigma", {1, 0}, false}};
    for (long i = 1; i <= r; ++i)
        x.curves.push_back({"F" + std::to_string(i), {0, 1}, true});
    x.chi = 1 - g;
    x.uniruled = true;
    x.validate();
    for (long i = 1; i <= r; ++i)
        x = blow_up(x, {{"F" + std::to_string(i), 1}}, {"E" + std::to_string(i)});
    return x;
}

SurfaceModel quintic_census(long r)
{
    if (r < 0)
        throw PreconditionError("number of blow-ups must be nonnegative");
    SurfaceModel x;
    x.rank = 1;
    x.G = QMatrix{{5}};
    x.K = {1};
    x.curves = {{"H", {1}, false}};
    x.chi = 5;
    x.validate();
    for (long i = 1; i <= r; ++i)
        x = blow_up(x, {}, {"E" + std::to_string(i)});
    return x;
}

RandomPair random_rational_pair(std::mt19937_64& rng)
{
    SurfaceModel s;
    s.rank = 1;
    s.G = QMatrix{{1}};
    s.K = {-3};
    for (int i = 1; i <= 4; ++i)
        s.curves.push_back({"L" + std::to_string(i), {1}, true});
    s.chi = 1;
    s.rational_surface = true;
    s.uniruled = true;
    s.validate();

    const int blowups = 2 + static_cast<int>(rng() % 2);
    for (int b = 1; b <= blowups; ++b) {
        std::string name = "E" + std::to_string(b);
        switch (rng() % 3) {
        case 0: {
            std::vector<std::pair<std::size_t, std::size_t>> meeting;
            for (std::size_t i = 0; i < s.curves.size(); ++i)
                for (std::size_t j = i + 1; j < s.curves.size(); ++j)
                    if (s.dot(s.curves[i].cls, s.curves[j].cls) >= 1)
                        meeting.emplace_back(i, j);
            if (!meeting.empty()) {
                auto [i, j] = meeting[rng() % meeting.size()];
                s = blow_up(s, {{s.curves[i].name, 1}, {s.curves[j].name, 1}}, {name});
                break;
            }
            [[fallthrough]];
        }
        case 1:
            s = blow_up(s, {{s.curves[rng() % s.curves.size()].name, 1}}, {name});
            break;
        default:
            s = blow_up(s, {}, {name});
            break;
        }
    }

    RandomPair out;
    out.pair.surface = s;
    for (const auto& c : s.curves) {
        Rational coeff = c.name[0] == 'L' ? Rational(3 + static_cast<long>(rng() % 2), 4)
                                          : Rational(static_cast<long>(rng() % 5), 4);
        out.pair.boundary.push_back({c.name, coeff});
        out.boundary.push_back(c.name);
    }
    out.pair.validate();
    return out;
}

SNCConfig two_curves(const Rational& a1, const Rational& a2, long points)
{
    return SNCConfig::boundary(2, {{"S1", a1}, {"S2", a2}}, {{{0, 1}, points}});
}

SNCConfig triple_point(const Rational& a1, const Rational& a2, const Rational& a3)
{
    return SNCConfig::boundary(3, {{"S1", a1}, {"S2", a2}, {"S3", a3}}, {{{0, 1}, 1}, {{0, 2}, 1}, {{1, 2}, 1}},
                               {{{0, 1, 2}, 1}});
}

}  // namespace geography::fixtures
