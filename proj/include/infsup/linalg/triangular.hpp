#pragma once

#include <span>

#include "infsup/linalg/matrix.hpp"

namespace infsup {

/// Keeps entries with i <= j.
Matrix triu(const Matrix& m);
/// m - triu(m).
Matrix tril_strict(const Matrix& m);

/// Solves U x = b in place for upper-triangular U.
void solve_upper(const Matrix& u, std::span<double> b);
/// Solves L x = b in place; `unit_diagonal` skips the division.
void solve_lower(const Matrix& l, std::span<double> b, bool unit_diagonal = false);
/// Solves U^T x = b in place.
void solve_upper_transpose(const Matrix& u, std::span<double> b);
/// Solves L^T x = b in place.
void solve_lower_transpose(const Matrix& l, std::span<double> b, bool unit_diagonal = false);

Matrix inverse_upper(const Matrix& u);
Matrix inverse_lower(const Matrix& l, bool unit_diagonal = false);

}  // namespace infsup
