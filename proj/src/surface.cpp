#include "geography/surface.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "geography/linalg.hpp"

namespace geography {

std::optional<std::size_t> SurfaceModel::find_curve(const std::string& name) const
{
    for (std::size_t i = 0; i < curves.size(); ++i)
        if (curves[i].name == name)
            return i;
    return std::nullopt;
}

const Curve& SurfaceModel::curve(const std::string& name) const
{
    auto i = find_curve(name);
    if (!i)
        throw PreconditionError("unknown curve '" + name + "'");
    return curves[*i];
}

void SurfaceModel::validate() const
{
    if (G.rows() != rank || G.cols() != rank)
        throw InvariantViolation("intersection form is not " + std::to_string(rank) + "x" + std::to_string(rank));
    if (K.size() != rank)
        throw InvariantViolation("canonical class has the wrong length");
    if (!G.symmetric())
        throw InvariantViolation("intersection form is not symmetric");
    std::set<std::string> names;
    for (const auto& c : curves) {
        if (c.cls.size() != rank)
            throw InvariantViolation("curve '" + c.name + "' has the wrong length");
        if (!names.insert(c.name).second)
            throw InvariantViolation("curve name '" + c.name + "' is repeated");
    }
    if (rank > 0) {
        auto in = inertia(G);
        if (in.positive != 1 || in.negative != rank - 1)
            throw InvariantViolation("intersection form has signature (" + std::to_string(in.positive) + ", " +
                                     std::to_string(in.negative) + "), expected (1, " + std::to_string(rank - 1) +
                                     ")");
    }
    for (const auto& c : curves) {
        Rational self = dot(c.cls, c.cls);
        Rational kc = dot(K, c.cls);
        if (!is_integer(self) || !is_integer(kc))
            continue;  // numbers on a singular model; adjunction does not apply
        Rational twice_genus_minus_two = self + kc;
        if (numerator(twice_genus_minus_two) % 2 != 0)
            throw InvariantViolation("adjunction: C² + K·C = " + to_string(twice_genus_minus_two) + " is odd for '" +
                                     c.name + "'");
        if (twice_genus_minus_two < -2)
            throw InvariantViolation("adjunction: C² + K·C < -2 for '" + c.name + "'");
        if (twice_genus_minus_two == -2 && !c.rational)
            throw InvariantViolation("adjunction: '" + c.name + "' has arithmetic genus 0 but is not rational");
    }
}

QVector PairConfig::delta() const
{
    QVector d(surface.rank, Rational(0));
    for (const auto& t : boundary) {
        const auto& c = surface.curve(t.curve);
        for (std::size_t j = 0; j < d.size(); ++j)
            d[j] += t.coeff * c.cls[j];
    }
    return d;
}

QVector PairConfig::log_canonical() const
{
    QVector d = delta();
    for (std::size_t j = 0; j < d.size(); ++j)
        d[j] += surface.K[j];
    return d;
}

Rational PairConfig::coefficient(const std::string& curve) const
{
    for (const auto& t : boundary)
        if (t.curve == curve)
            return t.coeff;
    return 0;
}

void PairConfig::validate() const
{
    std::set<std::string> seen;
    for (const auto& t : boundary) {
        if (!surface.find_curve(t.curve))
            throw PreconditionError("boundary names unknown curve '" + t.curve + "'");
        if (!seen.insert(t.curve).second)
            throw PreconditionError("boundary curve '" + t.curve + "' is listed twice");
        if (t.coeff < 0 || t.coeff > 1)
            throw PreconditionError("boundary coefficient " + to_string(t.coeff) + " of '" + t.curve +
                                    "' is outside [0, 1]");
    }
}

SurfaceModel blow_up(const SurfaceModel& s, const std::vector<std::pair<std::string, long>>& incidence,
                     const BlowUpOptions& options)
{
    std::vector<long> mult(s.curves.size(), 0);
    for (const auto& [name, m] : incidence) {
        auto i = s.find_curve(name);
        if (!i)
            throw PreconditionError("blow-up incidence names unknown curve '" + name + "'");
        if (m < 0)
            throw PreconditionError("negative multiplicity for '" + name + "'");
        mult[*i] += m;
    }
    std::vector<std::size_t> through;
    for (std::size_t i = 0; i < mult.size(); ++i)
        if (mult[i] > 0)
            through.push_back(i);
    bool snc = through.size() <= 2 &&
               std::all_of(through.begin(), through.end(), [&](std::size_t i) { return mult[i] == 1; });
    if (!snc && !options.allow_non_snc)
        throw PreconditionError("blow-up centre is not a normal crossing point of the tracked curves");
    if (through.size() == 2 && snc) {
        const auto& a = s.curves[through[0]];
        const auto& b = s.curves[through[1]];
        if (s.dot(a.cls, b.cls) < 1)
            throw PreconditionError("curves '" + a.name + "' and '" + b.name + "' do not meet");
    }

    const std::size_t n = s.rank;
    SurfaceModel out;
    out.rank = n + 1;
    out.G = QMatrix(n + 1, n + 1);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            out.G(r, c) = s.G(r, c);
    out.G(n, n) = -1;
    out.K = s.K;
    out.K.push_back(1);
    for (std::size_t i = 0; i < s.curves.size(); ++i) {
        Curve c = s.curves[i];
        c.cls.push_back(-mult[i]);
        out.curves.push_back(std::move(c));
    }
    std::string name = options.exceptional_name;
    if (name.empty()) {
        std::size_t k = n + 1;
        do {
            name = "E" + std::to_string(k++);
        } while (s.find_curve(name));
    } else if (s.find_curve(name)) {
        throw PreconditionError("exceptional curve name '" + name + "' is already in use");
    }
    QVector e(n + 1, Rational(0));
    e[n] = 1;
    out.curves.push_back({name, e, true});
    out.chi = s.chi;
    out.rational_surface = s.rational_surface;
    out.uniruled = s.uniruled;
    out.validate();
    return out;
}

namespace {

struct Contraction {
    std::size_t index;  // tracked curve
    std::size_t pivot;  // coordinate removed
    QVector c;
    Rational self;
};

Contraction prepare(const SurfaceModel& s, const std::string& name)
{
    auto idx = s.find_curve(name);
    if (!idx)
        throw PreconditionError("cannot contract unknown curve '" + name + "'");
    const QVector& c = s.curves[*idx].cls;
    Rational self = s.dot(c, c);
    if (self >= 0)
        throw PreconditionError("curve '" + name + "' has C² = " + to_string(self) + " >= 0 and is not contractible");
    std::size_t pivot = c.size();
    for (std::size_t j = c.size(); j-- > 0;)
        if (c[j] != 0) {
            pivot = j;
            break;
        }
    return {*idx, pivot, c, self};
}

QVector push(const Contraction& k, std::span<const Rational> d)
{
    Rational f = d[k.pivot] / k.c[k.pivot];
    QVector out;
    for (std::size_t j = 0; j < d.size(); ++j)
        if (j != k.pivot)
            out.push_back(d[j] - f * k.c[j]);
    return out;
}

}  // namespace

QVector pushforward(const SurfaceModel& s, const std::string& c, std::span<const Rational> d)
{
    if (d.size() != s.rank)
        throw DimensionError("class has the wrong length for pushforward");
    return push(prepare(s, c), d);
}

SurfaceModel contract(const SurfaceModel& s, const std::string& name)
{
    Contraction k = prepare(s, name);
    const std::size_t n = s.rank;
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < n; ++j)
        if (j != k.pivot)
            keep.push_back(j);

    QVector gc = s.G.apply(k.c);  // e_a · C
    SurfaceModel out;
    out.rank = n - 1;
    out.G = QMatrix(n - 1, n - 1);
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = 0; b < keep.size(); ++b)
            out.G(a, b) = s.G(keep[a], keep[b]) + gc[keep[a]] * gc[keep[b]] / (-k.self);
    out.K = push(k, s.K);
    for (std::size_t i = 0; i < s.curves.size(); ++i) {
        if (i == k.index)
            continue;
        Curve c = s.curves[i];
        c.cls = push(k, c.cls);
        out.curves.push_back(std::move(c));
    }
    out.chi = s.chi;
    out.rational_surface = s.rational_surface;
    out.uniruled = s.uniruled;
    out.validate();
    return out;
}

bool nef_class_is_psef(const SurfaceModel& s, std::span<const Rational> p)
{
    if (s.dot(p, p) < 0)
        return false;
    // A nef class with P² ≥ 0 lies in the closed positive cone or its negative;
    // a tracked class of positive square tells the two apart.
    QVector sum(s.rank, Rational(0));
    for (const auto& c : s.curves) {
        if (s.dot(c.cls, c.cls) > 0)
            return s.dot(p, c.cls) >= 0;
        for (std::size_t j = 0; j < sum.size(); ++j)
            sum[j] += c.cls[j];
    }
    if (s.dot(sum, sum) > 0)
        return s.dot(p, sum) >= 0;
    return true;
}

ZariskiOutcome zariski(const SurfaceModel& s, std::span<const Rational> d, const std::vector<std::size_t>& order)
{
    if (d.size() != s.rank)
        throw DimensionError("divisor has the wrong length for this model");
    std::vector<std::size_t> scan = order;
    if (scan.empty()) {
        scan.resize(s.curves.size());
        std::iota(scan.begin(), scan.end(), 0);
    }
    if (scan.size() != s.curves.size())
        throw PreconditionError("scan order is not a permutation of the tracked curves");

    std::vector<Rational> self(s.curves.size());
    for (std::size_t i = 0; i < s.curves.size(); ++i)
        self[i] = s.dot(s.curves[i].cls, s.curves[i].cls);

    QVector p(d.begin(), d.end());
    std::vector<std::size_t> support;
    QVector coeff;
    while (true) {
        std::vector<std::size_t> added;
        for (auto i : scan) {
            if (std::find(support.begin(), support.end(), i) != support.end())
                continue;
            if (s.dot(p, s.curves[i].cls) < 0) {
                if (self[i] >= 0)
                    return NotPseudoeffective{"negative on '" + s.curves[i].name + "', a curve with C² >= 0"};
                added.push_back(i);
            }
        }
        if (added.empty())
            break;
        support.insert(support.end(), added.begin(), added.end());

        const std::size_t k = support.size();
        QMatrix gram(k, k);
        QVector rhs(k);
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b)
                gram(a, b) = s.dot(s.curves[support[a]].cls, s.curves[support[b]].cls);
            rhs[a] = s.dot(d, s.curves[support[a]].cls);
        }
        if (!negative_definite(gram))
            return NotPseudoeffective{"support of the negative part is not negative definite"};
        auto sol = solve_linear(gram, rhs);
        if (sol.status != SolveStatus::unique)
            throw InvariantViolation("negative definite Gram matrix is singular");
        coeff = sol.x;
        for (std::size_t a = 0; a < k; ++a)
            if (coeff[a] < 0)
                return NotPseudoeffective{"negative coefficient for '" + s.curves[support[a]].name + "'"};
        p.assign(d.begin(), d.end());
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t j = 0; j < p.size(); ++j)
                p[j] -= coeff[a] * s.curves[support[a]].cls[j];
    }
    if (!nef_class_is_psef(s, p))
        return NotPseudoeffective{"positive part is nef on tracked curves but not pseudoeffective"};

    ZariskiResult r;
    r.P = p;
    std::vector<std::pair<std::size_t, Rational>> n;
    for (std::size_t a = 0; a < support.size(); ++a)
        if (coeff[a] > 0)
            n.emplace_back(support[a], coeff[a]);
    std::sort(n.begin(), n.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [i, c] : n)
        r.N.emplace_back(s.curves[i].name, c);
    return r;
}

namespace {

ZariskiResult require_psef(const PairConfig& cfg)
{
    cfg.validate();
    auto out = zariski(cfg.surface, cfg.log_canonical());
    if (auto* np = std::get_if<NotPseudoeffective>(&out))
        throw NotPseudoeffectiveError("K + Δ is not pseudoeffective: " + np->reason);
    return std::get<ZariskiResult>(out);
}

}  // namespace

std::vector<std::string> divisorial_base_locus(const PairConfig& cfg)
{
    std::vector<std::string> out;
    for (const auto& [name, _] : require_psef(cfg).N)
        out.push_back(name);
    return out;
}

std::vector<std::string> augmented_null_curves(const PairConfig& cfg)
{
    ZariskiResult z = require_psef(cfg);
    const auto& s = cfg.surface;
    Rational p2 = s.dot(z.P, z.P);
    if (p2 <= 0)
        throw PreconditionError("K + Δ is not big: P² = " + to_string(p2));
    std::vector<std::string> out;
    for (const auto& c : s.curves)
        if (s.dot(z.P, c.cls) == 0)
            out.push_back(c.name);
    return out;
}

CensusReport minus_one_census(const SurfaceModel& s)
{
    if (s.rational_surface)
        throw PreconditionError("the (-1)-curve census needs a non-rational surface");
    CensusReport r;
    for (const auto& c : s.curves)
        if (c.rational && s.dot(c.cls, c.cls) == -1 && s.dot(s.K, c.cls) == -1)
            ++r.count;
    r.c1_squared = s.c1_squared();
    r.c2 = s.c2();
    r.A1 = r.c2;
    r.A = r.A1;
    if (s.uniruled) {
        r.A2 = (2 * r.c2 - r.c1_squared) / 3;
        r.A = std::max(r.A1, 2 * *r.A2);
    }
    r.pass = Rational(static_cast<long>(r.count)) <= r.A;
    return r;
}

}  // namespace geography
