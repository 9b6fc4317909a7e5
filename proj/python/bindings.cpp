#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ca/association.hpp"
#include "ca/errors.hpp"
#include "ca/model.hpp"
#include "ca/render.hpp"
#include "ca/residuals.hpp"
#include "ca/svd.hpp"
#include "ca/table.hpp"

namespace py = pybind11;

namespace {

std::vector<std::vector<double>> matrix_to_lists(const ca::Matrix& m) {
  std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

ca::Matrix lists_to_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  ca::Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw ca::Error(ca::ErrorCode::RaggedRow, "row " + std::to_string(i + 1));
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Correspondence analysis toolkit core";

  py::register_exception<ca::Error>(m, "AnalysisError");

  py::class_<ca::ContingencyTable>(m, "Table")
      .def(py::init([](std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                       const std::vector<std::vector<double>>& counts) {
             return ca::make_table(std::move(row_labels), std::move(col_labels),
                                   lists_to_matrix(counts));
           }),
           py::arg("row_labels"), py::arg("col_labels"), py::arg("counts"))
      .def_readonly("row_labels", &ca::ContingencyTable::row_labels)
      .def_readonly("col_labels", &ca::ContingencyTable::col_labels)
      .def_readonly("grand_total", &ca::ContingencyTable::grand_total)
      .def_property_readonly(
          "counts", [](const ca::ContingencyTable& t) { return matrix_to_lists(t.counts); })
      .def("__repr__", [](const ca::ContingencyTable& t) {
        return "<Table " + std::to_string(t.n_rows()) + "x" + std::to_string(t.n_cols()) + ">";
      });

  m.def("parse_long_csv", &ca::parse_long_csv, py::arg("text"), py::arg("row_field"),
        py::arg("col_field"), py::arg("value_field"));
  m.def("parse_matrix_csv", &ca::parse_matrix_csv, py::arg("text"));
  m.def("validate", [](const ca::ContingencyTable& t) { return ca::validate(t); });
  m.def("to_matrix_csv", &ca::to_matrix_csv);

  m.def("svd", [](const std::vector<std::vector<double>>& a) {
    ca::SvdResult r = ca::svd(lists_to_matrix(a));
    return py::make_tuple(matrix_to_lists(r.left), r.singular_values, matrix_to_lists(r.right));
  });

  py::class_<ca::CorrespondenceModel>(m, "Model")
      .def_readonly("row_labels", &ca::CorrespondenceModel::row_labels)
      .def_readonly("col_labels", &ca::CorrespondenceModel::col_labels)
      .def_readonly("row_masses", &ca::CorrespondenceModel::row_masses)
      .def_readonly("col_masses", &ca::CorrespondenceModel::col_masses)
      .def_readonly("singular_values", &ca::CorrespondenceModel::singular_values)
      .def_readonly("principal_inertias", &ca::CorrespondenceModel::principal_inertias)
      .def_readonly("row_distances", &ca::CorrespondenceModel::row_distances)
      .def_readonly("col_distances", &ca::CorrespondenceModel::col_distances)
      .def_readonly("total_inertia", &ca::CorrespondenceModel::total_inertia)
      .def_property_readonly(
          "row_principal",
          [](const ca::CorrespondenceModel& m_) { return matrix_to_lists(m_.row_principal); })
      .def_property_readonly(
          "col_principal",
          [](const ca::CorrespondenceModel& m_) { return matrix_to_lists(m_.col_principal); })
      .def_property_readonly(
          "row_standard",
          [](const ca::CorrespondenceModel& m_) { return matrix_to_lists(m_.row_std); })
      .def_property_readonly(
          "col_standard",
          [](const ca::CorrespondenceModel& m_) { return matrix_to_lists(m_.col_std); })
      .def("__repr__", [](const ca::CorrespondenceModel& m_) {
        return "<Model axes=" + std::to_string(m_.n_axes()) + ">";
      });

  m.def("fit", &ca::fit, py::arg("table"));

  py::class_<ca::DimensionSummary>(m, "DimensionSummary")
      .def_readonly("dimension", &ca::DimensionSummary::dimension)
      .def_readonly("singular_value", &ca::DimensionSummary::singular_value)
      .def_readonly("inertia", &ca::DimensionSummary::inertia)
      .def_readonly("proportion", &ca::DimensionSummary::proportion)
      .def_readonly("cumulative", &ca::DimensionSummary::cumulative);

  m.def("inertia_summary", &ca::inertia_summary);
  m.def(
      "coordinates",
      [](const ca::CorrespondenceModel& model, const std::string& norm) {
        ca::CoordinatePair pair = ca::coordinates(model, ca::parse_normalization(norm));
        return py::make_tuple(matrix_to_lists(pair.rows), matrix_to_lists(pair.cols));
      },
      py::arg("model"), py::arg("normalization") = "symmetric");

  py::class_<ca::ResidualTable>(m, "Residuals")
      .def_readonly("row_labels", &ca::ResidualTable::row_labels)
      .def_readonly("col_labels", &ca::ResidualTable::col_labels)
      .def_readonly("statistic", &ca::ResidualTable::statistic)
      .def_readonly("df", &ca::ResidualTable::df)
      .def_readonly("p_value", &ca::ResidualTable::p_value)
      .def_property_readonly(
          "expected", [](const ca::ResidualTable& r) { return matrix_to_lists(r.expected); })
      .def_property_readonly("signed_cells", [](const ca::ResidualTable& r) {
        return matrix_to_lists(r.signed_cells);
      });

  m.def("residuals", &ca::residuals, py::arg("table"));
  m.def("chi_square_upper_tail", &ca::chi_square_upper_tail, py::arg("x"), py::arg("df"));
  m.def("format_p", &ca::format_p, py::arg("p"));

  py::class_<ca::AssociationEntry>(m, "AssociationEntry")
      .def_readonly("col_label", &ca::AssociationEntry::col_label)
      .def_readonly("value", &ca::AssociationEntry::value);

  py::class_<ca::AssociationRow>(m, "AssociationRow")
      .def_readonly("row_label", &ca::AssociationRow::row_label)
      .def_readonly("strongest", &ca::AssociationRow::strongest)
      .def_readonly("weakest", &ca::AssociationRow::weakest)
      .def_readonly("strongest_positive", &ca::AssociationRow::strongest_positive)
      .def_readonly("weakest_negative", &ca::AssociationRow::weakest_negative);

  py::class_<ca::ColumnIndexEntry>(m, "ColumnIndexEntry")
      .def_readonly("col_label", &ca::ColumnIndexEntry::col_label)
      .def_readonly("strongest_rows", &ca::ColumnIndexEntry::strongest_rows)
      .def_readonly("weakest_rows", &ca::ColumnIndexEntry::weakest_rows);

  py::class_<ca::AssociationReport>(m, "AssociationReport")
      .def_readonly("rows", &ca::AssociationReport::rows)
      .def_readonly("by_column", &ca::AssociationReport::by_column);

  m.def("extract", &ca::extract, py::arg("residuals"));
  m.def("flag_positive_only", &ca::flag_positive_only, py::arg("report"));
  m.def("association_to_csv", &ca::association_to_csv);
  m.def("association_from_csv", &ca::association_from_csv);
  m.def("association_text_tables", &ca::association_text_tables);

  py::class_<ca::BiplotPoint>(m, "BiplotPoint")
      .def_readonly("label", &ca::BiplotPoint::label)
      .def_readonly("x", &ca::BiplotPoint::x)
      .def_readonly("y", &ca::BiplotPoint::y);

  py::class_<ca::BiplotDocument>(m, "Biplot")
      .def_readonly("dims", &ca::BiplotDocument::dims)
      .def_readonly("row_points", &ca::BiplotDocument::row_points)
      .def_readonly("col_points", &ca::BiplotDocument::col_points)
      .def_readonly("axis_captions", &ca::BiplotDocument::axis_captions);

  m.def(
      "biplot",
      [](const ca::CorrespondenceModel& model, const std::string& norm,
         std::pair<int, int> dims) {
        return ca::biplot(model, ca::parse_normalization(norm), dims);
      },
      py::arg("model"), py::arg("normalization") = "symmetric",
      py::arg("dims") = std::pair<int, int>{1, 2});
  m.def("emit_svg", &ca::emit_svg, py::arg("doc"));
  m.def(
      "emit_report",
      [](const ca::CorrespondenceModel& model, const ca::ResidualTable& resid,
         const ca::AssociationReport& assoc, std::size_t display_dims) {
        return ca::emit_report(model, resid, assoc, display_dims);
      },
      py::arg("model"), py::arg("residuals"), py::arg("associations"),
      py::arg("display_dims") = 0);
  m.def(
      "coordinates_csv",
      [](const ca::CorrespondenceModel& model, const std::string& norm) {
        return ca::coordinates_csv(model, ca::parse_normalization(norm));
      },
      py::arg("model"), py::arg("normalization") = "symmetric");
  m.def("residuals_csv", &ca::residuals_csv);
  m.def("summary_csv", &ca::summary_csv);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
