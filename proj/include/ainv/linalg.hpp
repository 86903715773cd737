#pragma once

#include <ainv/numeric.hpp>

#include <cstddef>
#include <vector>

namespace ainv::linalg {

using Vector = std::vector<Rational>;
/// Row-major dense matrix; every row has the same length.
using Matrix = std::vector<Vector>;

Vector zeros(std::size_t n);
Vector unit(std::size_t n, std::size_t j);
bool is_zero(const Vector& v);
Rational dot(const Vector& a, const Vector& b);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Vector& a, const Rational& s);
/// a + s*b
Vector axpy(const Vector& a, const Rational& s, const Vector& b);
Vector apply(const Matrix& m, const Vector& v);

/// Gauss-Jordan elimination to reduced row-echelon form. Zero rows are
/// dropped, pivots are normalized to 1 and pivot columns are increasing.
/// Returns the pivot column of each remaining row.
std::vector<std::size_t> rref(Matrix& rows);

std::size_t rank(Matrix rows);

/// Basis (in reduced echelon form) of {x | rows * x = 0}, x of length ncols.
Matrix nullspace(const Matrix& rows, std::size_t ncols);

/// Scale a row to integer entries with gcd 1 and positive leading entry.
std::vector<Integer> clear_denominators(const Vector& row);

} // namespace ainv::linalg
