#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ca/matrix.hpp"

namespace ca {

// Labeled two-way table of non-negative reals. Values are reals, not
// integers: sources mix counts with age-adjusted rates and every formula
// downstream is identical either way.
//
// Parsers return structurally well-formed tables; validate() certifies the
// numeric invariants (non-negative cells, positive margins, at least 2x2).
struct ContingencyTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  Matrix counts;
  double grand_total = 0.0;

  std::size_t n_rows() const { return row_labels.size(); }
  std::size_t n_cols() const { return col_labels.size(); }

  std::vector<double> row_totals() const;
  std::vector<double> col_totals() const;
};

ContingencyTable make_table(std::vector<std::string> row_labels,
                            std::vector<std::string> col_labels, Matrix counts);

// Long layout: one (row, col, value) triple per data line. Duplicate pairs are
// summed; pairs never seen are 0. Label order is first appearance.
ContingencyTable parse_long_csv(std::string_view text, std::string_view row_field,
                                std::string_view col_field, std::string_view value_field);

// Matrix layout: header = column labels (first cell blank or "rows"), then one
// line per row: label followed by the numeric cells.
ContingencyTable parse_matrix_csv(std::string_view text);

// Certifies every ContingencyTable invariant; throws ZeroMargin /
// NegativeEntry / TooSmall. Idempotent, never mutates.
const ContingencyTable& validate(const ContingencyTable& table);

// Matrix-layout CSV with values at 12 significant digits; inverse of
// parse_matrix_csv up to that precision.
std::string to_matrix_csv(const ContingencyTable& table);

// RFC-4180 helpers shared by the emitters.
std::string csv_quote(std::string_view field);
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

// Decimal formatting used by all file emitters (12 significant digits).
std::string format_value(double v);

}  // namespace ca
