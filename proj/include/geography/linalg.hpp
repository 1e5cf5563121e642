#pragma once

#include <optional>
#include <vector>

#include "geography/rational.hpp"

namespace geography {

/// Exact determinant by fraction-free (Bareiss) elimination. Rows are first
/// scaled to integers; the scaling is divided out at the end.
Rational det_exact(const QMatrix& a);

enum class SolveStatus { unique, no_solution, degenerate };

struct LinearSolution {
    SolveStatus status = SolveStatus::no_solution;
    /// The unique solution, or one particular solution when degenerate.
    QVector x;
};

/// Solves A x = b for square A. A singular but consistent system is reported
/// as degenerate with a particular solution; the caller decides what to do.
LinearSolution solve_linear(const QMatrix& a, std::span<const Rational> b);

std::size_t rank(const QMatrix& a);
std::size_t rank(const std::vector<QVector>& rows, std::size_t cols);

/// Basis of { x : A x = 0 }.
std::vector<QVector> nullspace(const QMatrix& a);

/// Affine dimension of a point set; -1 for the empty set.
int affine_dimension(const std::vector<QVector>& points);

struct Inertia {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
};

/// Sylvester inertia of a symmetric form by congruence diagonalization.
Inertia inertia(const QMatrix& symmetric);

bool negative_definite(const QMatrix& symmetric);

}  // namespace geography
