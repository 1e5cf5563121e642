#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace geography {

// Expression templates off: values behave like plain value types under auto.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using QVector = std::vector<Rational>;
using ZVector = std::vector<Integer>;

/// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape mismatch between vectors, matrices or polytopes.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Caller-side contract violated (bad input, out-of-range parameter).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A mathematical invariant failed to hold on a computed object.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// Malformed serialized input.
class ParseError : public Error {
public:
    using Error::Error;
};

Integer numerator(const Rational& q);
Integer denominator(const Rational& q);

/// Accepts "n", "n/d" and surrounding whitespace; result is in lowest terms.
Rational parse_rational(std::string_view text);

/// Always "num/den", even for integers.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Least common multiple of the denominators; 1 for an empty span.
Integer lcm_denominator(std::span<const Rational> values);

bool is_integer(const Rational& q);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
QVector to_rational(std::span<const Integer> v);

/// Scales a rational vector by the lcm of its denominators and divides out the
/// gcd of the result, giving a primitive integer vector on the same ray.
ZVector primitive_integer(std::span<const Rational> v);

std::string to_string(std::span<const Rational> v);

/// Exact rectangular matrix of rationals, row-major.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols);
    QMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
    static QMatrix from_rows(const std::vector<QVector>& rows);
    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    QVector row(std::size_t r) const;
    QVector col(std::size_t c) const;
    QVector apply(std::span<const Rational> x) const;
    /// xᵀ M y
    Rational bilinear(std::span<const Rational> x, std::span<const Rational> y) const;
    QMatrix transposed() const;
    bool symmetric() const;

    friend bool operator==(const QMatrix&, const QMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

}  // namespace geography
