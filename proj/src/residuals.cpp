#include "ca/residuals.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "ca/errors.hpp"

namespace ca {

namespace {

// Regularized lower incomplete gamma P(a, x) by series, for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int i = 0; i < 10000; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * std::numeric_limits<double>::epsilon())
      break;
  }
  double log_prefix = a * std::log(x) - x - std::lgamma(a);
  return sum * std::exp(log_prefix);
}

// Regularized upper incomplete gamma Q(a, x) by modified Lentz continued
// fraction, for x >= a + 1.
double gamma_q_contfrac(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < std::numeric_limits<double>::epsilon()) break;
  }
  double log_prefix = a * std::log(x) - x - std::lgamma(a);
  return h * std::exp(log_prefix);
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

double chi_square_upper_tail(double x, int df) {
  if (!std::isfinite(x) || x < 0.0)
    throw Error(ErrorCode::NonFinite, "chi-square statistic must be finite and non-negative");
  if (df < 1) throw Error(ErrorCode::NonFinite, "degrees of freedom must be positive");
  double a = df / 2.0;
  double half = x / 2.0;
  if (half == 0.0) return 1.0;
  if (half < a + 1.0) return clamp01(1.0 - gamma_p_series(a, half));
  return clamp01(gamma_q_contfrac(a, half));
}

std::string format_p(double p) {
  if (p < 0.001) return "<0.001";
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.3f", p);
  return buf;
}

ResidualTable residuals(const ContingencyTable& table) {
  validate(table);
  const std::size_t a = table.n_rows(), b = table.n_cols();
  auto row_tot = table.row_totals();
  auto col_tot = table.col_totals();
  const double n = table.grand_total;

  ResidualTable result;
  result.row_labels = table.row_labels;
  result.col_labels = table.col_labels;
  result.expected = Matrix(a, b);
  result.signed_cells = Matrix(a, b);
  result.statistic = 0.0;
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      double expected = row_tot[i] * col_tot[j] / n;
      double dev = table.counts(i, j) - expected;
      double cell = dev * dev / expected;
      result.expected(i, j) = expected;
      result.signed_cells(i, j) = dev < 0.0 ? -cell : cell;
      result.statistic += cell;
    }
  }
  result.df = static_cast<int>((a - 1) * (b - 1));
  result.p_value = chi_square_upper_tail(result.statistic, result.df);
  return result;
}

}  // namespace ca
