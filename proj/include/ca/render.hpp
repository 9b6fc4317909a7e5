#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "ca/association.hpp"
#include "ca/model.hpp"
#include "ca/residuals.hpp"

namespace ca {

struct BiplotPoint {
  std::string label;
  double x = 0.0;
  double y = 0.0;
};

// Joint 2D map of row and column points on two chosen axes (1-based).
struct BiplotDocument {
  Normalization normalization = Normalization::symmetric;
  std::pair<int, int> dims{1, 2};
  std::vector<BiplotPoint> row_points;
  std::vector<BiplotPoint> col_points;
  std::array<std::string, 2> axis_captions;  // e.g. "Dimension 1 (42.9%)"
};

// Throws BadDims when the axes are equal or outside 1..K.
BiplotDocument biplot(const CorrespondenceModel& model,
                      Normalization norm = Normalization::symmetric,
                      std::pair<int, int> dims = {1, 2});

// SVG 1.1, deterministic byte-for-byte: rows as circles, columns as
// triangles (paths), one text label per point, an origin crosshair, equal
// scaling on both axes, viewport = data extent + 10%.
std::string emit_svg(const BiplotDocument& doc);

// Markdown analysis report: dimension summary (three decimals), chi-square /
// p-value / df line, association tables, signed residual matrix (two
// decimals). display_dims = 0 shows all axes.
// Throws InputMismatch when the three inputs disagree on shape or labels.
std::string emit_report(const CorrespondenceModel& model, const ResidualTable& residuals,
                        const AssociationReport& associations, std::size_t display_dims = 0);

// CSV emitters (12-significant-digit values).
std::string coordinates_csv(const CorrespondenceModel& model, Normalization norm);
std::string residuals_csv(const ResidualTable& residuals);
std::string summary_csv(const CorrespondenceModel& model);

}  // namespace ca
