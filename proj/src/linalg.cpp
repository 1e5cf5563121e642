#include "geography/linalg.hpp"

#include <utility>

namespace geography {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<QVector>& m, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[r], m[p]);
        Rational inv = 1 / m[r][c];
        for (auto& v : m[r])
            v *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < m[i].size(); ++j)
                m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<QVector> rows_of(const QMatrix& a)
{
    std::vector<QVector> m(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        m[r] = a.row(r);
    return m;
}

}  // namespace

Rational det_exact(const QMatrix& a)
{
    if (!a.square())
        throw DimensionError("determinant of a " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " matrix");
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;

    std::vector<ZVector> m(n, ZVector(n));
    Integer scale = 1;
    for (std::size_t r = 0; r < n; ++r) {
        QVector row = a.row(r);
        Integer l = lcm_denominator(row);
        scale *= l;
        for (std::size_t c = 0; c < n; ++c)
            m[r][c] = numerator(row[c]) * (l / denominator(row[c]));
    }

    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return Rational(sign * m[n - 1][n - 1], scale);
}

LinearSolution solve_linear(const QMatrix& a, std::span<const Rational> b)
{
    if (!a.square())
        throw DimensionError("solve_linear needs a square matrix");
    if (b.size() != a.rows())
        throw DimensionError("right-hand side length mismatch");
    const std::size_t n = a.rows();
    std::vector<QVector> m = rows_of(a);
    for (std::size_t r = 0; r < n; ++r)
        m[r].push_back(b[r]);
    auto pivots = rref(m, n + 1);

    LinearSolution out;
    if (!pivots.empty() && pivots.back() == n) {
        out.status = SolveStatus::no_solution;
        return out;
    }
    out.x.assign(n, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        out.x[pivots[r]] = m[r][n];
    out.status = pivots.size() == n ? SolveStatus::unique : SolveStatus::degenerate;
    return out;
}

std::size_t rank(const std::vector<QVector>& rows, std::size_t cols)
{
    auto m = rows;
    return rref(m, cols).size();
}

std::size_t rank(const QMatrix& a) { return rank(rows_of(a), a.cols()); }

std::vector<QVector> nullspace(const QMatrix& a)
{
    auto m = rows_of(a);
    const std::size_t n = a.cols();
    auto pivots = rref(m, n);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<QVector> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        QVector v(n, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

int affine_dimension(const std::vector<QVector>& points)
{
    if (points.empty())
        return -1;
    std::vector<QVector> diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) {
        QVector d(points[i].size());
        for (std::size_t j = 0; j < d.size(); ++j)
            d[j] = points[i][j] - points[0][j];
        diffs.push_back(std::move(d));
    }
    return static_cast<int>(rank(diffs, points[0].size()));
}

Inertia inertia(const QMatrix& symmetric)
{
    if (!symmetric.symmetric())
        throw DimensionError("inertia needs a symmetric matrix");
    QMatrix m = symmetric;
    const std::size_t n = m.rows();
    Inertia out;
    std::size_t k = 0;
    while (k < n) {
        // Bring a nonzero diagonal entry to position k.
        std::size_t p = k;
        while (p < n && m(p, p) == 0)
            ++p;
        if (p == n) {
            // All remaining diagonal entries vanish; use an off-diagonal one.
            std::size_t i = n, j = n;
            for (std::size_t r = k; r < n && i == n; ++r)
                for (std::size_t c = r + 1; c < n; ++c)
                    if (m(r, c) != 0) {
                        i = r;
                        j = c;
                        break;
                    }
            if (i == n) {
                out.zero += n - k;
                break;
            }
            // row_i += row_j, col_i += col_j gives m(i,i) = 2 m(i,j) != 0.
            for (std::size_t c = 0; c < n; ++c)
                m(i, c) += m(j, c);
            for (std::size_t r = 0; r < n; ++r)
                m(r, i) += m(r, j);
            p = i;
        }
        if (p != k) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(m(k, c), m(p, c));
            for (std::size_t r = 0; r < n; ++r)
                std::swap(m(r, k), m(r, p));
        }
        const Rational pivot = m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0)
                continue;
            Rational f = m(i, k) / pivot;
            for (std::size_t c = k; c < n; ++c)
                m(i, c) -= f * m(k, c);
            for (std::size_t r = k; r < n; ++r)
                m(r, i) -= f * m(r, k);
        }
        if (pivot > 0)
            ++out.positive;
        else
            ++out.negative;
        ++k;
    }
    return out;
}

bool negative_definite(const QMatrix& symmetric)
{
    auto in = inertia(symmetric);
    return in.negative == symmetric.rows();
}

}  // namespace geography
