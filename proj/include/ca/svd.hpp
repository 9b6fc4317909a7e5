#pragma once

#include <vector>

#include "ca/matrix.hpp"

namespace ca {

// Thin SVD: A (a x b) = left * diag(singular_values) * right', with
// q = min(a, b) columns on each side, singular values non-negative and
// non-increasing, and both column sets orthonormal.
struct SvdResult {
  Matrix left;                          // a x q
  std::vector<double> singular_values;  // length q
  Matrix right;                         // b x q
};

// Deterministic one-sided (Hestenes) Jacobi SVD. Fixed cyclic sweep order, so
// identical input bits give identical output bits. Sign convention: in each
// left vector the largest-magnitude entry (lowest index on ties) is made
// non-negative and the right vector follows.
//
// Throws NonFinite for NaN/Inf input and ConvergenceFailure if 60 sweeps do
// not reach the orthogonality threshold (the message reports the residual).
SvdResult svd(const Matrix& a);

}  // namespace ca
