#include "ca/association.hpp"

#include <charconv>
#include <cmath>

#include "ca/errors.hpp"
#include "ca/table.hpp"

namespace ca {

namespace {

std::vector<ColumnIndexEntry> build_column_index(
    const std::vector<std::string>& col_labels, const std::vector<AssociationRow>& rows) {
  std::vector<ColumnIndexEntry> index;
  index.reserve(col_labels.size());
  for (const auto& col : col_labels) {
    ColumnIndexEntry entry;
    entry.col_label = col;
    for (const auto& row : rows) {
      if (row.strongest_positive)
        for (const auto& e : row.strongest)
          if (e.col_label == col) entry.strongest_rows.push_back(row.row_label);
      if (row.weakest_negative)
        for (const auto& e : row.weakest)
          if (e.col_label == col) entry.weakest_rows.push_back(row.row_label);
    }
    index.push_back(std::move(entry));
  }
  return index;
}

std::string join_cols(const std::vector<AssociationEntry>& entries) {
  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0) out += "; ";
    out += entries[i].col_label;
  }
  return out;
}

std::vector<std::string> split_cols(std::string_view joined) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= joined.size()) {
    std::size_t sep = joined.find("; ", start);
    if (sep == std::string_view::npos) {
      out.emplace_back(joined.substr(start));
      break;
    }
    out.emplace_back(joined.substr(start, sep - start));
    start = sep + 2;
  }
  return out;
}

}  // namespace

AssociationReport extract(const ResidualTable& residuals) {
  const std::size_t a = residuals.signed_cells.rows();
  const std::size_t b = residuals.signed_cells.cols();

  AssociationReport report;
  report.rows.reserve(a);
  for (std::size_t i = 0; i < a; ++i) {
    double max_v = residuals.signed_cells(i, 0);
    double min_v = max_v;
    for (std::size_t j = 1; j < b; ++j) {
      double v = residuals.signed_cells(i, j);
      if (v > max_v) max_v = v;
      if (v < min_v) min_v = v;
    }
    AssociationRow row;
    row.row_label = residuals.row_labels[i];
    for (std::size_t j = 0; j < b; ++j) {
      double v = residuals.signed_cells(i, j);
      if (v == max_v) row.strongest.push_back({residuals.col_labels[j], v});
      if (v == min_v) row.weakest.push_back({residuals.col_labels[j], v});
    }
    report.rows.push_back(std::move(row));
  }
  report.by_column = build_column_index(residuals.col_labels, report.rows);
  return report;
}

AssociationReport flag_positive_only(const AssociationReport& report) {
  AssociationReport flagged = report;
  std::vector<std::string> col_labels;
  for (const auto& entry : report.by_column) col_labels.push_back(entry.col_label);
  for (auto& row : flagged.rows) {
    row.strongest_positive = !row.strongest.empty() && row.strongest.front().value > 0.0;
    row.weakest_negative = !row.weakest.empty() && row.weakest.front().value < 0.0;
  }
  flagged.by_column = build_column_index(col_labels, flagged.rows);
  return flagged;
}

std::string association_to_csv(const AssociationReport& report) {
  std::string out = "row_label,strongest_cols,strongest_value,weakest_cols,weakest_value\n";
  for (const auto& row : report.rows) {
    out += csv_quote(row.row_label);
    out += ',';
    out += csv_quote(row.strongest_positive ? join_cols(row.strongest) : kNoPositiveAssociation);
    out += ',';
    out += row.strongest.empty() ? "" : format_value(row.strongest.front().value);
    out += ',';
    out += csv_quote(row.weakest_negative ? join_cols(row.weakest) : kNoNegativeAssociation);
    out += ',';
    out += row.weakest.empty() ? "" : format_value(row.weakest.front().value);
    out += '\n';
  }
  return out;
}

AssociationReport association_from_csv(std::string_view text) {
  auto rows = parse_csv(text);
  if (rows.size() < 2) throw Error(ErrorCode::EmptyInput, "no association rows");

  AssociationReport report;
  std::vector<std::string> col_order;
  auto note_col = [&](const std::string& label) {
    for (const auto& seen : col_order)
      if (seen == label) return;
    col_order.push_back(label);
  };

  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto& fields = rows[k];
    if (fields.size() != 5)
      throw Error(ErrorCode::RaggedRow, "association row " + std::to_string(k + 1));
    AssociationRow row;
    row.row_label = fields[0];
    auto parse_side = [&](const std::string& cols, const std::string& value_text,
                          const char* marker, bool& flag,
                          std::vector<AssociationEntry>& entries) {
      double value = 0.0;
      if (!value_text.empty()) {
        auto [p, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
        if (ec != std::errc() || p != value_text.data() + value_text.size())
          throw Error(ErrorCode::BadValue, "association value \"" + value_text + "\"");
      }
      if (cols == marker) {
        flag = false;
      } else {
        flag = true;
        for (auto& label : split_cols(cols)) {
          note_col(label);
          entries.push_back({std::move(label), value});
        }
      }
    };
    parse_side(fields[1], fields[2], kNoPositiveAssociation, row.strongest_positive, row.strongest);
    parse_side(fields[3], fields[4], kNoNegativeAssociation, row.weakest_negative, row.weakest);
    report.rows.push_back(std::move(row));
  }
  report.by_column = build_column_index(col_order, report.rows);
  return report;
}

std::string association_text_tables(const AssociationReport& report) {
  std::string out = "Highly associated (strongest positive cell per row)\n";
  for (const auto& entry : report.by_column) {
    if (entry.strongest_rows.empty()) continue;
    out += "  " + entry.col_label + ": ";
    for (std::size_t i = 0; i < entry.strongest_rows.size(); ++i) {
      if (i > 0) out += ", ";
      out += entry.strongest_rows[i];
    }
    out += '\n';
  }
  std::string none_pos;
  for (const auto& row : report.rows)
    if (!row.strongest_positive) {
      if (!none_pos.empty()) none_pos += ", ";
      none_pos += row.row_label;
    }
  if (!none_pos.empty()) out += std::string("  [") + kNoPositiveAssociation + "] " + none_pos + '\n';

  out += "Less associated (most negative cell per row)\n";
  for (const auto& entry : report.by_column) {
    if (entry.weakest_rows.empty()) continue;
    out += "  " + entry.col_label + ": ";
    for (std::size_t i = 0; i < entry.weakest_rows.size(); ++i) {
      if (i > 0) out += ", ";
      out += entry.weakest_rows[i];
    }
    out += '\n';
  }
  std::string none_neg;
  for (const auto& row : report.rows)
    if (!row.weakest_negative) {
      if (!none_neg.empty()) none_neg += ", ";
      none_neg += row.row_label;
    }
  if (!none_neg.empty()) out += std::string("  [") + kNoNegativeAssociation + "] " + none_neg + '\n';
  return out;
}

}  // namespace ca
