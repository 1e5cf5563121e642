#include "geography/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace geography {

Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

Integer parse_integer(std::string_view s, std::string_view whole)
{
    s = trim(s);
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size())
        throw ParseError("malformed rational '" + std::string(whole) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            throw ParseError("malformed rational '" + std::string(whole) + "'");
    return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    auto s = trim(text);
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(s, text));
    Integer num = parse_integer(s.substr(0, slash), text);
    Integer den = parse_integer(s.substr(slash + 1), text);
    if (den == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& q)
{
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string to_string(const Integer& z) { return z.str(); }

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0)
        return 0;
    return boost::multiprecision::abs(a / gcd(a, b) * b);
}

Integer lcm_denominator(std::span<const Rational> values)
{
    Integer l = 1;
    for (const auto& v : values)
        l = lcm(l, denominator(v));
    return l;
}

bool is_integer(const Rational& q) { return denominator(q) == 1; }

Integer floor(const Rational& q)
{
    Integer n = numerator(q), d = denominator(q);
    Integer f = n / d;  // truncates toward zero
    if (n < 0 && f * d != n)
        f -= 1;
    return f;
}

Integer ceil(const Rational& q) { return -floor(-q); }

Rational dot(std::span<const Rational> a, std::span<const Rational> b)
{
    if (a.size() != b.size())
        throw DimensionError("dot product of vectors of length " + std::to_string(a.size()) +
                             " and " + std::to_string(b.size()));
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

QVector to_rational(std::span<const Integer> v)
{
    QVector out;
    out.reserve(v.size());
    for (const auto& z : v)
        out.emplace_back(z);
    return out;
}

ZVector primitive_integer(std::span<const Rational> v)
{
    Integer l = lcm_denominator(v);
    ZVector out;
    out.reserve(v.size());
    Integer g = 0;
    for (const auto& q : v) {
        Integer z = numerator(q) * (l / denominator(q));
        g = gcd(g, z);
        out.push_back(z);
    }
    if (g > 1)
        for (auto& z : out)
            z /= g;
    return out;
}

std::string to_string(std::span<const Rational> v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            os << ", ";
        if (is_integer(v[i]))
            os << numerator(v[i]);
        else
            os << to_string(v[i]);
    }
    os << ')';
    return os.str();
}

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw DimensionError("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows)
{
    QMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_)
            throw DimensionError("ragged matrix rows");
        std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * m.cols_));
    }
    return m;
}

QMatrix QMatrix::identity(std::size_t n)
{
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

QVector QMatrix::row(std::size_t r) const
{
    return QVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

QVector QMatrix::col(std::size_t c) const
{
    QVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = (*this)(r, c);
    return out;
}

QVector QMatrix::apply(std::span<const Rational> x) const
{
    if (x.size() != cols_)
        throw DimensionError("matrix-vector size mismatch");
    QVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out[r] += (*this)(r, c) * x[c];
    return out;
}

Rational QMatrix::bilinear(std::span<const Rational> x, std::span<const Rational> y) const
{
    if (x.size() != rows_ || y.size() != cols_)
        throw DimensionError("bilinear form size mismatch");
    Rational s = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
        if (x[r] == 0)
            continue;
        Rational t = 0;
        for (std::size_t c = 0; c < cols_; ++c)
            t += (*this)(r, c) * y[c];
        s += x[r] * t;
    }
    return s;
}

QMatrix QMatrix::transposed() const
{
    QMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

bool QMatrix::symmetric() const
{
    if (!square())
        return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r + 1; c < cols_; ++c)
            if ((*this)(r, c) != (*this)(c, r))
                return false;
    return true;
}

}  // namespace geography
