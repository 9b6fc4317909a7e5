#include "ca/svd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "ca/errors.hpp"

namespace ca {

namespace {

constexpr int kMaxSweeps = 60;
constexpr double kOrthTol = 1e-14;   // relative column-orthogonality target
constexpr double kRankTol = 1e-13;   // below this (relative to the largest
                                     // singular value) a left vector is rebuilt

double column_dot(const Matrix& m, std::size_t p, std::size_t q) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, p) * m(i, q);
  return s;
}

// One-sided Jacobi on the columns of `work` (m x n, m >= n): rotate column
// pairs until all are mutually orthogonal, accumulating the rotations in
// `v` (n x n). Column norms become the singular values, normalized columns
// the left vectors. The cyclic pair order is fixed, so the computation is
// bit-deterministic.
void orthogonalize_columns(Matrix& work, Matrix& v) {
  const std::size_t n = work.cols();
  double worst = 0.0;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = column_dot(work, p, p);
        double beta = column_dot(work, q, q);
        double gamma = column_dot(work, p, q);
        double denom = std::sqrt(alpha) * std::sqrt(beta);
        if (denom == 0.0) continue;
        double rel = std::abs(gamma) / denom;
        worst = std::max(worst, rel);
        if (rel <= kOrthTol) continue;

        double zeta = (beta - alpha) / (2.0 * gamma);
        double t;
        if (std::abs(zeta) > 1e10) {
          t = 1.0 / (2.0 * zeta);  // asymptotic form, avoids zeta^2 overflow
        } else {
          t = ((zeta >= 0.0) ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        }
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (std::size_t i = 0; i < work.rows(); ++i) {
          double wp = work(i, p), wq = work(i, q);
          work(i, p) = c * wp - s * wq;
          work(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
        rotated = true;
      }
    }
    if (!rotated) return;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "residual %.3e after %d sweeps", worst, kMaxSweeps);
  throw Error(ErrorCode::ConvergenceFailure, buf);
}

// Deterministic Gram-Schmidt completion: replace column `j` of `u` with the
// standard basis vector keeping the largest component after projecting out
// the columns marked valid (lowest index on ties).
void complete_column(Matrix& u, std::size_t j, const std::vector<bool>& valid) {
  const std::size_t m = u.rows();
  std::vector<double> best;
  double best_norm = 0.0;
  for (std::size_t cand = 0; cand < m; ++cand) {
    std::vector<double> w(m, 0.0);
    w[cand] = 1.0;
    for (std::size_t k = 0; k < u.cols(); ++k) {
      if (!valid[k]) continue;
      double d = 0.0;
      for (std::size_t i = 0; i < m; ++i) d += u(i, k) * w[i];
      for (std::size_t i = 0; i < m; ++i) w[i] -= d * u(i, k);
    }
    double norm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    if (norm > best_norm) {
      best_norm = norm;
      best = std::move(w);
    }
  }
  for (std::size_t i = 0; i < m; ++i) u(i, j) = best[i] / best_norm;
}

SvdResult svd_tall(const Matrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  Matrix work = a;
  Matrix v(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  orthogonalize_columns(work, v);

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = std::sqrt(column_dot(work, j, j));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

  SvdResult result;
  result.left = Matrix(m, n);
  result.right = Matrix(n, n);
  result.singular_values.resize(n);
  double sigma_max = norms.empty() ? 0.0 : norms[order[0]];
  std::vector<bool> valid(n, false);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t src = order[k];
    double sigma = norms[src];
    result.singular_values[k] = sigma;
    for (std::size_t i = 0; i < n; ++i) result.right(i, k) = v(i, src);
    if (sigma > kRankTol * sigma_max && sigma > 0.0) {
      for (std::size_t i = 0; i < m; ++i) result.left(i, k) = work(i, src) / sigma;
      valid[k] = true;
    }
  }
  // numerically null columns get an orthonormal completion
  for (std::size_t k = 0; k < n; ++k) {
    if (valid[k]) continue;
    complete_column(result.left, k, valid);
    valid[k] = true;
  }

  // sign convention: largest-magnitude entry of each left vector (lowest
  // index on ties) made non-negative, right vector follows
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double mag = std::abs(result.left(i, k));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (result.left(arg, k) < 0.0) {
      for (std::size_t i = 0; i < m; ++i) result.left(i, k) = -result.left(i, k);
      for (std::size_t i = 0; i < n; ++i) result.right(i, k) = -result.right(i, k);
    }
  }
  return result;
}

}  // namespace

SvdResult svd(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0)
    throw Error(ErrorCode::NonFinite, "matrix is empty");
  for (double v : a.data())
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "matrix has a NaN or Inf entry");

  if (a.rows() >= a.cols()) return svd_tall(a);

  // wide matrix: decompose the transpose and swap the factors
  SvdResult t = svd_tall(a.transposed());
  SvdResult result;
  result.left = std::move(t.right);
  result.right = std::move(t.left);
  result.singular_values = std::move(t.singular_values);

  // re-apply the sign convention, which is defined on the left factor
  const std::size_t m = result.left.rows(), n = result.right.rows();
  for (std::size_t k = 0; k < result.singular_values.size(); ++k) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double mag = std::abs(result.left(i, k));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (result.left(arg, k) < 0.0) {
      for (std::size_t i = 0; i < m; ++i) result.left(i, k) = -result.left(i, k);
      for (std::size_t i = 0; i < n; ++i) result.right(i, k) = -result.right(i, k);
    }
  }
  return result;
}

}  // namespace ca
