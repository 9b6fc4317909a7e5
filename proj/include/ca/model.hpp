#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ca/matrix.hpp"
#include "ca/table.hpp"

namespace ca {

enum class Normalization { principal, standard, symmetric };

Normalization parse_normalization(std::string_view name);  // throws UnknownNormalization
std::string_view normalization_name(Normalization n);

// Fitted correspondence analysis of an a x b table. K = min(a, b) - 1
// non-trivial axes; the trivial axis (singular value 1, vectors proportional
// to the square-root masses) is removed.
//
// Coordinate conventions per axis k:
//   standard:  left/right singular vectors divided by the square-root masses
//   principal: standard scaled by the singular value
//   symmetric: standard scaled by the square root of the singular value
// Axes with singular value below 1e-12 are null: they report zero
// coordinates (a null axis has no preferred basis).
struct CorrespondenceModel {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<double> row_masses;          // r, sums to 1
  std::vector<double> col_masses;          // c, sums to 1
  std::vector<double> singular_values;     // length K, descending, in [0, 1]
  std::vector<double> principal_inertias;  // squared singular values
  Matrix row_std, col_std;                 // standard coordinates, a x K / b x K
  Matrix row_principal, col_principal;     // principal coordinates
  std::vector<double> row_distances;       // chi-square distance of each row profile
  std::vector<double> col_distances;       //   from its margin (step-9 formulas)
  double total_inertia = 0.0;              // sum of principal inertias

  std::size_t n_axes() const { return singular_values.size(); }
};

// Step 2: p_ij = k_ij / k.
Matrix proportion_matrix(const ContingencyTable& table);

struct MarginMasses {
  std::vector<double> row;
  std::vector<double> col;
};

// Step 3: row and column sums of P.
MarginMasses masses(const Matrix& p);

// Steps 4-5: A_ij = p_ij / sqrt(r_i c_j), the uncentered scaled matrix whose
// leading singular triple is the trivial axis.
Matrix scaled_matrix(const Matrix& p, const std::vector<double>& r,
                     const std::vector<double>& c);

// Full pipeline, steps 2-10. Verifies the uncentered leading singular value
// equals 1 within 1e-8 (TrivialAxisMissing otherwise) and deflates the
// trivial triple exactly before extracting the non-trivial axes.
CorrespondenceModel fit(const ContingencyTable& table);

struct DimensionSummary {
  int dimension;  // 1-based
  double singular_value;
  double inertia;
  double proportion;
  double cumulative;
};

std::vector<DimensionSummary> inertia_summary(const CorrespondenceModel& model);

struct CoordinatePair {
  Matrix rows;  // a x K
  Matrix cols;  // b x K
};

CoordinatePair coordinates(const CorrespondenceModel& model, Normalization norm);

}  // namespace ca
