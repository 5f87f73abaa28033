#pragma once

#include "homalg/scalar.hpp"

#include <optional>
#include <vector>

namespace homalg {

using Matrix = std::vector<std::vector<Scalar>>;

/// Rank by fraction-free (Bareiss) elimination after clearing denominators row by row.
int exact_rank(const Matrix& m);

/// Basis of {x : m x = 0}, read off the reduced row echelon form.
std::vector<std::vector<Scalar>> nullspace(const Matrix& m, size_t cols);

/// Some solution of m x = b, or nothing when the system is inconsistent.
std::optional<std::vector<Scalar>> solve(const Matrix& m, const std::vector<Scalar>& b, size_t cols);

}  // namespace homalg
