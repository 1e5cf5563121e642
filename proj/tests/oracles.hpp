#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library's algorithms beyond plain data types.

#include <functional>
#include <numeric>
#include <vector>

#include "geography/rational.hpp"

namespace oracle {

using geography::Integer;
using geography::QMatrix;
using geography::QVector;
using geography::Rational;

// Laplace expansion along the first row.
inline Rational cofactor_det(const std::vector<std::vector<Rational>>& m)
{
    const std::size_t n = m.size();
    if (n == 0)
        return 1;
    if (n == 1)
        return m[0][0];
    Rational total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c] == 0)
            continue;
        std::vector<std::vector<Rational>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Rational> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c)
                    row.push_back(m[r][k]);
            minor.push_back(std::move(row));
        }
        Rational term = m[0][c] * cofactor_det(minor);
        total += (c % 2 == 0) ? term : Rational(-term);
    }
    return total;
}

inline Rational cofactor_det(const QMatrix& a)
{
    std::vector<std::vector<Rational>> m(a.rows(), std::vector<Rational>(a.cols()));
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            m[r][c] = a(r, c);
    return cofactor_det(m);
}

// Counts primitive integer weight vectors w ≥ 1 (componentwise) with
// Σ w_i (1 - a_i) < bound, calling visit(w) for each. Every 1 - a_i > 0 keeps
// the search finite. A non-primitive w is a multiple of a divisorial valuation,
// not a new divisor, and is skipped.
inline std::size_t weight_vectors(const std::vector<Rational>& a, const Rational& bound,
                                  const std::function<void(const std::vector<long>&)>& visit)
{
    const std::size_t n = a.size();
    std::vector<long> w(n, 1);
    std::size_t count = 0;
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t i, Rational used) {
        if (i == n) {
            long g = 0;
            for (long x : w)
                g = std::gcd(g, x);
            if (used < bound && g == 1) {
                ++count;
                visit(w);
            }
            return;
        }
        Rational gap = 1 - a[i];
        for (long x = 1;; ++x) {
            Rational next = used + gap * x;
            if (next >= bound)
                break;
            w[i] = x;
            rec(i + 1, next);
        }
        w[i] = 1;
    };
    rec(0, 0);
    return count;
}

struct ZariskiAnswer {
    bool pseudoeffective = false;
    QVector P;
    std::vector<Rational> coeff;  // per curve; zero off the support
};

// Brute force over every support set S of curves with C² < 0: accept S when
// its Gram matrix is negative definite (Sylvester, by cofactor minors), the
// Cramer solution is strictly positive and the remainder P meets every curve
// nonnegatively. A nef P counts as pseudoeffective when P² ≥ 0 and P·h ≥ 0 for
// the given class h of positive square.
inline ZariskiAnswer zariski_bruteforce(const QMatrix& g, const std::vector<QVector>& curves, const QVector& d,
                                        const QVector& h)
{
    auto dot = [&](const QVector& x, const QVector& y) {
        Rational t = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j)
                t += x[i] * g(i, j) * y[j];
        return t;
    };
    std::vector<std::size_t> negative;
    for (std::size_t i = 0; i < curves.size(); ++i)
        if (dot(curves[i], curves[i]) < 0)
            negative.push_back(i);

    const std::size_t n = negative.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t b = 0; b < n; ++b)
            if ((mask >> b) & 1)
                s.push_back(negative[b]);
        const std::size_t k = s.size();
        std::vector<std::vector<Rational>> gram(k, std::vector<Rational>(k));
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                gram[a][b] = dot(curves[s[a]], curves[s[b]]);
        bool definite = true;
        for (std::size_t r = 1; r <= k && definite; ++r) {
            std::vector<std::vector<Rational>> lead(r, std::vector<Rational>(r));
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b)
                    lead[a][b] = -gram[a][b];
            definite = cofactor_det(lead) > 0;
        }
        if (!definite)
            continue;
        Rational det = cofactor_det(gram);
        std::vector<Rational> x(k);
        bool positive = true;
        for (std::size_t c = 0; c < k && positive; ++c) {
            auto m = gram;
            for (std::size_t a = 0; a < k; ++a)
                m[a][c] = dot(d, curves[s[a]]);
            x[c] = cofactor_det(m) / det;
            positive = x[c] > 0;
        }
        if (!positive)
            continue;
        QVector p = d;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t j = 0; j < p.size(); ++j)
                p[j] -= x[a] * curves[s[a]][j];
        bool nef = true;
        for (const auto& c : curves)
            nef = nef && dot(p, c) >= 0;
        if (!nef)
            continue;
        ZariskiAnswer out;
        out.P = p;
        out.coeff.assign(curves.size(), Rational(0));
        for (std::size_t a = 0; a < k; ++a)
            out.coeff[s[a]] = x[a];
        out.pseudoeffective = dot(p, p) >= 0 && dot(p, h) >= 0;
        return out;
    }
    return {};
}

}  // namespace oracle
