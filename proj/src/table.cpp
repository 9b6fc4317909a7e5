#include "ca/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>

#include "ca/errors.hpp"

namespace ca {

namespace {

// One RFC-4180 record per entry, with the 1-based line number where the
// record started. Handles quoted fields (embedded commas, doubled quotes,
// newlines), CRLF, and a leading UTF-8 BOM. Fully empty lines are skipped.
struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

std::vector<CsvRecord> parse_records(std::string_view text) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<CsvRecord> records;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool field_open = false;  // true once the current record has any content
  std::size_t line = 1, record_line = 1;

  auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    if (!(fields.size() == 1 && fields[0].empty()))
      records.push_back({std::move(fields), record_line});
    fields.clear();
    field_open = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        field_open = true;
        break;
      case ',':
        end_field();
        field_open = true;
        break;
      case '\r':
        break;
      case '\n':
        if (field_open || !field.empty() || !fields.empty()) end_record();
        ++line;
        record_line = line;
        break;
      default:
        field += ch;
        field_open = true;
        break;
    }
  }
  if (field_open || !field.empty() || !fields.empty()) end_record();
  return records;
}

// Strict locale-independent decimal parse; plain and scientific notation
// only. Thousands separators, stray characters, and empty fields all fail.
bool parse_number(std::string_view s, double& out) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return false;
  std::size_t e = s.find_last_not_of(" \t");
  s = s.substr(b, e - b + 1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

double sum_all(const Matrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v;
  return s;
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  for (auto& rec : parse_records(text)) rows.push_back(std::move(rec.fields));
  return rows;
}

std::string csv_quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> ContingencyTable::row_totals() const {
  std::vector<double> t(n_rows(), 0.0);
  for (std::size_t i = 0; i < n_rows(); ++i)
    for (std::size_t j = 0; j < n_cols(); ++j) t[i] += counts(i, j);
  return t;
}

std::vector<double> ContingencyTable::col_totals() const {
  std::vector<double> t(n_cols(), 0.0);
  for (std::size_t i = 0; i < n_rows(); ++i)
    for (std::size_t j = 0; j < n_cols(); ++j) t[j] += counts(i, j);
  return t;
}

ContingencyTable make_table(std::vector<std::string> row_labels,
                            std::vector<std::string> col_labels, Matrix counts) {
  ContingencyTable t;
  t.row_labels = std::move(row_labels);
  t.col_labels = std::move(col_labels);
  t.counts = std::move(counts);
  t.grand_total = sum_all(t.counts);
  return t;
}

ContingencyTable parse_long_csv(std::string_view text, std::string_view row_field,
                                std::string_view col_field, std::string_view value_field) {
  auto records = parse_records(text);
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "no data rows");

  const auto& header = records[0].fields;
  auto find_field = [&](std::string_view name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw Error(ErrorCode::MissingField,
                  "column \"" + std::string(name) + "\" not found in header");
    return static_cast<std::size_t>(it - header.begin());
  };
  std::size_t ri = find_field(row_field);
  std::size_t ci = find_field(col_field);
  std::size_t vi = find_field(value_field);

  if (records.size() == 1) throw Error(ErrorCode::EmptyInput, "no data rows");

  std::vector<std::string> row_labels, col_labels;
  std::unordered_map<std::string, std::size_t> row_index, col_index;
  std::vector<std::unordered_map<std::size_t, double>> cells;  // per row

  for (std::size_t k = 1; k < records.size(); ++k) {
    const auto& rec = records[k];
    std::size_t need = std::max({ri, ci, vi}) + 1;
    if (rec.fields.size() < need)
      throw Error(ErrorCode::RaggedRow, "line " + std::to_string(rec.line) + " has " +
                                            std::to_string(rec.fields.size()) +
                                            " fields, expected at least " +
                                            std::to_string(need));
    const std::string& row_label = rec.fields[ri];
    const std::string& col_label = rec.fields[ci];
    if (row_label.empty() || col_label.empty())
      throw Error(ErrorCode::BadValue,
                  "empty label on line " + std::to_string(rec.line));
    double value;
    if (!parse_number(rec.fields[vi], value) || value < 0.0)
      throw Error(ErrorCode::BadValue, "bad value \"" + rec.fields[vi] + "\" on line " +
                                           std::to_string(rec.line));

    auto [rit, rnew] = row_index.try_emplace(row_label, row_labels.size());
    if (rnew) {
      row_labels.push_back(row_label);
      cells.emplace_back();
    }
    auto [cit, cnew] = col_index.try_emplace(col_label, col_labels.size());
    if (cnew) col_labels.push_back(col_label);
    cells[rit->second][cit->second] += value;  // duplicates sum
  }

  Matrix counts(row_labels.size(), col_labels.size(), 0.0);
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (auto [j, v] : cells[i]) counts(i, j) = v;
  return make_table(std::move(row_labels), std::move(col_labels), std::move(counts));
}

ContingencyTable parse_matrix_csv(std::string_view text) {
  auto records = parse_records(text);
  if (records.size() < 2) throw Error(ErrorCode::EmptyInput, "no data rows");

  const auto& header = records[0].fields;
  if (header.size() < 2)
    throw Error(ErrorCode::RaggedRow, "header on line " + std::to_string(records[0].line) +
                                          " has no column labels");
  std::vector<std::string> col_labels(header.begin() + 1, header.end());
  std::unordered_set<std::string> seen;
  for (const auto& label : col_labels) {
    if (label.empty())
      throw Error(ErrorCode::BadValue, "empty column label in header");
    if (!seen.insert(label).second)
      throw Error(ErrorCode::DuplicateLabel, "column \"" + label + "\"");
  }

  std::vector<std::string> row_labels;
  Matrix counts(records.size() - 1, col_labels.size(), 0.0);
  seen.clear();
  for (std::size_t k = 1; k < records.size(); ++k) {
    const auto& rec = records[k];
    if (rec.fields.size() != col_labels.size() + 1)
      throw Error(ErrorCode::RaggedRow, "line " + std::to_string(rec.line) + " has " +
                                            std::to_string(rec.fields.size()) +
                                            " fields, expected " +
                                            std::to_string(col_labels.size() + 1));
    const std::string& label = rec.fields[0];
    if (label.empty())
      throw Error(ErrorCode::BadValue, "empty row label on line " + std::to_string(rec.line));
    if (!seen.insert(label).second) throw Error(ErrorCode::DuplicateLabel, "row \"" + label + "\"");
    row_labels.push_back(label);
    for (std::size_t j = 0; j < col_labels.size(); ++j) {
      double value;
      if (!parse_number(rec.fields[j + 1], value))
        throw Error(ErrorCode::BadValue, "bad value \"" + rec.fields[j + 1] + "\" on line " +
                                             std::to_string(rec.line));
      counts(k - 1, j) = value;
    }
  }
  return make_table(std::move(row_labels), std::move(col_labels), std::move(counts));
}

const ContingencyTable& validate(const ContingencyTable& table) {
  if (table.n_rows() < 2 || table.n_cols() < 2)
    throw Error(ErrorCode::TooSmall, "table is " + std::to_string(table.n_rows()) + "x" +
                                         std::to_string(table.n_cols()) +
                                         ", need at least 2x2");
  for (std::size_t i = 0; i < table.n_rows(); ++i)
    for (std::size_t j = 0; j < table.n_cols(); ++j) {
      double v = table.counts(i, j);
      if (!std::isfinite(v) || v < 0.0)
        throw Error(ErrorCode::NegativeEntry, "row \"" + table.row_labels[i] + "\", column \"" +
                                                  table.col_labels[j] + "\"");
    }
  auto rt = table.row_totals();
  for (std::size_t i = 0; i < rt.size(); ++i)
    if (rt[i] <= 0.0)
      throw Error(ErrorCode::ZeroMargin, "row \"" + table.row_labels[i] + "\"");
  auto ct = table.col_totals();
  for (std::size_t j = 0; j < ct.size(); ++j)
    if (ct[j] <= 0.0)
      throw Error(ErrorCode::ZeroMargin, "column \"" + table.col_labels[j] + "\"");
  return table;
}

std::string to_matrix_csv(const ContingencyTable& table) {
  std::string out;
  for (const auto& label : table.col_labels) {
    out += ',';
    out += csv_quote(label);
  }
  out += '\n';
  for (std::size_t i = 0; i < table.n_rows(); ++i) {
    out += csv_quote(table.row_labels[i]);
    for (std::size_t j = 0; j < table.n_cols(); ++j) {
      out += ',';
      out += format_value(table.counts(i, j));
    }
    out += '\n';
  }
  return out;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::BadValue: return "BadValue";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::RaggedRow: return "RaggedRow";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::ZeroMargin: return "ZeroMargin";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::TrivialAxisMissing: return "TrivialAxisMissing";
    case ErrorCode::UnknownNormalization: return "UnknownNormalization";
    case ErrorCode::BadDims: return "BadDims";
    case ErrorCode::InputMismatch: return "InputMismatch";
  }
  return "Error";
}

}  // namespace ca
