#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ca/residuals.hpp"

namespace ca {

struct AssociationEntry {
  std::string col_label;
  double value = 0.0;

  friend bool operator==(const AssociationEntry&, const AssociationEntry&) = default;
};

// Per-row extremes of the signed chi-square table. strongest/weakest hold the
// full tie group in column order. The positive/negative flags are set by
// flag_positive_only: a row whose maximum is not positive has no "highly
// associated" column (and symmetrically for the minimum).
struct AssociationRow {
  std::string row_label;
  std::vector<AssociationEntry> strongest;
  std::vector<AssociationEntry> weakest;
  bool strongest_positive = true;
  bool weakest_negative = true;
};

// Inverted index: rows whose strongest (resp. weakest) cell falls in each
// column, in row order. Columns listed in column order.
struct ColumnIndexEntry {
  std::string col_label;
  std::vector<std::string> strongest_rows;
  std::vector<std::string> weakest_rows;
};

struct AssociationReport {
  std::vector<AssociationRow> rows;
  std::vector<ColumnIndexEntry> by_column;
};

// Argmax / argmin per row with full tie lists; deterministic ordering.
AssociationReport extract(const ResidualTable& residuals);

// Marks rows whose strongest value <= 0 (resp. weakest >= 0) and rebuilds the
// column index without them.
AssociationReport flag_positive_only(const AssociationReport& report);

// CSV: row_label, strongest_cols, strongest_value, weakest_cols, weakest_value.
// Tie groups joined with "; "; flagged rows carry the marker text instead of
// a column list.
std::string association_to_csv(const AssociationReport& report);
AssociationReport association_from_csv(std::string_view text);

// Text tables in the "cause: comma-joined locations" layout.
std::string association_text_tables(const AssociationReport& report);

inline constexpr const char* kNoPositiveAssociation = "no positive association";
inline constexpr const char* kNoNegativeAssociation = "no negative association";

}  // namespace ca
