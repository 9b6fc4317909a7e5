#include "ca/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ca/errors.hpp"
#include "ca/table.hpp"

namespace ca {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch; break;
    }
  }
  return out;
}

void check_same_frame(const CorrespondenceModel& model, const ResidualTable& residuals,
                      const AssociationReport& associations) {
  if (residuals.row_labels != model.row_labels || residuals.col_labels != model.col_labels)
    throw Error(ErrorCode::InputMismatch, "model and residual table disagree on labels");
  if (associations.rows.size() != model.row_labels.size())
    throw Error(ErrorCode::InputMismatch, "association report has wrong row count");
  for (std::size_t i = 0; i < associations.rows.size(); ++i)
    if (associations.rows[i].row_label != model.row_labels[i])
      throw Error(ErrorCode::InputMismatch,
                  "association row \"" + associations.rows[i].row_label + "\" out of place");
}

}  // namespace

BiplotDocument biplot(const CorrespondenceModel& model, Normalization norm,
                      std::pair<int, int> dims) {
  const int k_axes = static_cast<int>(model.n_axes());
  auto [d1, d2] = dims;
  if (d1 == d2 || d1 < 1 || d2 < 1 || d1 > k_axes || d2 > k_axes)
    throw Error(ErrorCode::BadDims, "axes (" + std::to_string(d1) + ", " + std::to_string(d2) +
                                        ") for a model with " + std::to_string(k_axes) +
                                        " dimension(s)");

  CoordinatePair coords = coordinates(model, norm);
  auto summary = inertia_summary(model);

  BiplotDocument doc;
  doc.normalization = norm;
  doc.dims = dims;
  for (std::size_t i = 0; i < model.row_labels.size(); ++i)
    doc.row_points.push_back(
        {model.row_labels[i], coords.rows(i, d1 - 1), coords.rows(i, d2 - 1)});
  for (std::size_t j = 0; j < model.col_labels.size(); ++j)
    doc.col_points.push_back(
        {model.col_labels[j], coords.cols(j, d1 - 1), coords.cols(j, d2 - 1)});
  doc.axis_captions[0] = "Dimension " + std::to_string(d1) + " (" +
                         fmt("%.1f", summary[d1 - 1].proportion * 100.0) + "%)";
  doc.axis_captions[1] = "Dimension " + std::to_string(d2) + " (" +
                         fmt("%.1f", summary[d2 - 1].proportion * 100.0) + "%)";
  return doc;
}

std::string emit_svg(const BiplotDocument& doc) {
  constexpr double kCanvas = 640.0;

  double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;  // always include origin
  auto widen = [&](const BiplotPoint& p) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  };
  for (const auto& p : doc.row_points) widen(p);
  for (const auto& p : doc.col_points) widen(p);

  double span = std::max(hi_x - lo_x, hi_y - lo_y);
  if (span <= 0.0) span = 1.0;
  span *= 1.10;  // 10% margin
  double cx = (lo_x + hi_x) / 2.0, cy = (lo_y + hi_y) / 2.0;
  double scale = kCanvas / span;
  // equal scaling on both axes; y flipped to point up
  auto px = [&](double x) { return (x - cx) * scale + kCanvas / 2.0; };
  auto py = [&](double y) { return kCanvas / 2.0 - (y - cy) * scale; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fmt("%.0f", kCanvas) + "\" height=\"" + fmt("%.0f", kCanvas) + "\" viewBox=\"0 0 " +
         fmt("%.0f", kCanvas) + " " + fmt("%.0f", kCanvas) + "\">\n";
  svg += "<desc>" + xml_escape(doc.axis_captions[0]) + " vs " + xml_escape(doc.axis_captions[1]) +
         ", " + std::string(normalization_name(doc.normalization)) + " normalization</desc>\n";
  svg += "<line x1=\"0\" y1=\"" + fmt("%.2f", py(0.0)) + "\" x2=\"" + fmt("%.0f", kCanvas) +
         "\" y2=\"" + fmt("%.2f", py(0.0)) + "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt("%.2f", px(0.0)) + "\" y1=\"0\" x2=\"" + fmt("%.2f", px(0.0)) +
         "\" y2=\"" + fmt("%.0f", kCanvas) + "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";

  for (const auto& p : doc.row_points) {
    svg += "<circle cx=\"" + fmt("%.2f", px(p.x)) + "\" cy=\"" + fmt("%.2f", py(p.y)) +
           "\" r=\"3.5\" fill=\"#1f6fb2\"/>\n";
  }
  for (const auto& p : doc.col_points) {
    double x = px(p.x), y = py(p.y);
    svg += "<path d=\"M " + fmt("%.2f", x) + " " + fmt("%.2f", y - 4.5) + " L " +
           fmt("%.2f", x + 3.9) + " " + fmt("%.2f", y + 2.25) + " L " + fmt("%.2f", x - 3.9) +
           " " + fmt("%.2f", y + 2.25) + " Z\" fill=\"#c23b22\"/>\n";
  }
  for (const auto& p : doc.row_points) {
    svg += "<text x=\"" + fmt("%.2f", px(p.x) + 5.0) + "\" y=\"" + fmt("%.2f", py(p.y) - 5.0) +
           "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#1f6fb2\">" +
           xml_escape(p.label) + "</text>\n";
  }
  for (const auto& p : doc.col_points) {
    svg += "<text x=\"" + fmt("%.2f", px(p.x) + 5.0) + "\" y=\"" + fmt("%.2f", py(p.y) - 5.0) +
           "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#c23b22\">" +
           xml_escape(p.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string emit_report(const CorrespondenceModel& model, const ResidualTable& residuals,
                        const AssociationReport& associations, std::size_t display_dims) {
  check_same_frame(model, residuals, associations);
  auto summary = inertia_summary(model);
  std::size_t shown = display_dims == 0 ? summary.size() : std::min(display_dims, summary.size());

  std::string out = "# Correspondence analysis report\n\n";
  out += "Table: " + std::to_string(model.row_labels.size()) + " rows x " +
         std::to_string(model.col_labels.size()) + " columns\n\n";

  out += "## Dimensions\n\n";
  out += "Dim  Singular value  Inertia  Proportion  Cumulative\n";
  for (std::size_t k = 0; k < shown; ++k) {
    const auto& d = summary[k];
    out += std::to_string(d.dimension) + "  " + fmt("%.3f", d.singular_value) + "  " +
           fmt("%.3f", d.inertia) + "  " + fmt("%.3f", d.proportion) + "  " +
           fmt("%.3f", d.cumulative) + "\n";
  }
  if (shown < summary.size())
    out += "(" + std::to_string(summary.size() - shown) + " further dimension(s) not shown)\n";
  out += "\nChi-square = " + fmt("%.3f", residuals.statistic) +
         " ; p-value = " + format_p(residuals.p_value) +
         " (df = " + std::to_string(residuals.df) + ")\n\n";

  out += "## Associations\n\n";
  out += association_text_tables(associations);

  out += "\n## Signed chi-square residuals\n\n";
  std::size_t label_w = 3;
  for (const auto& label : model.row_labels) label_w = std::max(label_w, label.size());
  std::vector<std::size_t> col_w(model.col_labels.size());
  for (std::size_t j = 0; j < model.col_labels.size(); ++j) {
    col_w[j] = std::max<std::size_t>(model.col_labels[j].size(), 8);
    for (std::size_t i = 0; i < model.row_labels.size(); ++i)
      col_w[j] = std::max(col_w[j], fmt("%.2f", residuals.signed_cells(i, j)).size());
  }
  out += std::string(label_w, ' ');
  for (std::size_t j = 0; j < model.col_labels.size(); ++j) {
    const auto& label = model.col_labels[j];
    out += "  " + std::string(col_w[j] - label.size(), ' ') + label;
  }
  out += '\n';
  for (std::size_t i = 0; i < model.row_labels.size(); ++i) {
    const auto& label = model.row_labels[i];
    out += label + std::string(label_w - label.size(), ' ');
    for (std::size_t j = 0; j < model.col_labels.size(); ++j) {
      std::string cell = fmt("%.2f", residuals.signed_cells(i, j));
      out += "  " + std::string(col_w[j] - cell.size(), ' ') + cell;
    }
    out += '\n';
  }
  return out;
}

std::string coordinates_csv(const CorrespondenceModel& model, Normalization norm) {
  CoordinatePair coords = coordinates(model, norm);
  std::string out = "set,label";
  for (std::size_t k = 1; k <= model.n_axes(); ++k) out += ",dim_" + std::to_string(k);
  out += '\n';
  auto emit_block = [&](const char* set, const std::vector<std::string>& labels,
                        const Matrix& m) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      out += set;
      out += ',';
      out += csv_quote(labels[i]);
      for (std::size_t k = 0; k < model.n_axes(); ++k) {
        out += ',';
        out += format_value(m(i, k));
      }
      out += '\n';
    }
  };
  emit_block("row", model.row_labels, coords.rows);
  emit_block("col", model.col_labels, coords.cols);
  return out;
}

std::string residuals_csv(const ResidualTable& residuals) {
  std::string out = "row";
  for (const auto& label : residuals.col_labels) {
    out += ',';
    out += csv_quote(label);
  }
  out += '\n';
  for (std::size_t i = 0; i < residuals.row_labels.size(); ++i) {
    out += csv_quote(residuals.row_labels[i]);
    for (std::size_t j = 0; j < residuals.col_labels.size(); ++j) {
      out += ',';
      out += format_value(residuals.signed_cells(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string summary_csv(const CorrespondenceModel& model) {
  std::string out = "dimension,singular_value,inertia,proportion,cumulative\n";
  for (const auto& d : inertia_summary(model)) {
    out += std::to_string(d.dimension);
    out += ',';
    out += format_value(d.singular_value);
    out += ',';
    out += format_value(d.inertia);
    out += ',';
    out += format_value(d.proportion);
    out += ',';
    out += format_value(d.cumulative);
    out += '\n';
  }
  return out;
}

}  // namespace ca
