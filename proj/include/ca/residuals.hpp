#pragma once

#include <string>
#include <vector>

#include "ca/matrix.hpp"
#include "ca/table.hpp"

namespace ca {

// Chi-square decomposition of a table: expected counts under independence,
// per-cell signed chi-square contributions, the statistic, degrees of
// freedom, and the upper-tail p-value.
//
// signed_cells(i,j) = sign(n_ij - E_ij) * (n_ij - E_ij)^2 / E_ij, so the
// statistic is the sum of absolute cell values and grand_total * total
// inertia of the CA model equals the statistic.
struct ResidualTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  Matrix expected;
  Matrix signed_cells;
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
};

ResidualTable residuals(const ContingencyTable& table);

// Upper tail of the chi-square distribution: Q(df/2, x/2), the regularized
// upper incomplete gamma function. Series expansion below a+1, modified
// Lentz continued fraction above; underflow clamps to 0.
double chi_square_upper_tail(double x, int df);

// "<0.001" below 1e-3, otherwise fixed three decimals.
std::string format_p(double p);

}  // namespace ca
