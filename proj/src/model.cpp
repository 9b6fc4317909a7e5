#include "ca/model.hpp"

#include <cmath>
#include <cstdio>

#include "ca/errors.hpp"
#include "ca/svd.hpp"

namespace ca {

namespace {

constexpr double kTrivialTol = 1e-8;  // |leading singular value - 1| bound
constexpr double kNullAxis = 1e-12;   // below this an axis is null

}  // namespace

Normalization parse_normalization(std::string_view name) {
  if (name == "principal") return Normalization::principal;
  if (name == "standard") return Normalization::standard;
  if (name == "symmetric") return Normalization::symmetric;
  throw Error(ErrorCode::UnknownNormalization, "\"" + std::string(name) + "\"");
}

std::string_view normalization_name(Normalization n) {
  switch (n) {
    case Normalization::principal: return "principal";
    case Normalization::standard: return "standard";
    case Normalization::symmetric: return "symmetric";
  }
  return "?";
}

Matrix proportion_matrix(const ContingencyTable& table) {
  Matrix p(table.n_rows(), table.n_cols());
  for (std::size_t i = 0; i < table.n_rows(); ++i)
    for (std::size_t j = 0; j < table.n_cols(); ++j)
      p(i, j) = table.counts(i, j) / table.grand_total;
  return p;
}

MarginMasses masses(const Matrix& p) {
  MarginMasses m;
  m.row.assign(p.rows(), 0.0);
  m.col.assign(p.cols(), 0.0);
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) {
      m.row[i] += p(i, j);
      m.col[j] += p(i, j);
    }
  return m;
}

Matrix scaled_matrix(const Matrix& p, const std::vector<double>& r,
                     const std::vector<double>& c) {
  Matrix a(p.rows(), p.cols());
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      a(i, j) = p(i, j) / std::sqrt(r[i] * c[j]);
  return a;
}

CorrespondenceModel fit(const ContingencyTable& table) {
  validate(table);
  const std::size_t a = table.n_rows(), b = table.n_cols();
  const std::size_t k_axes = std::min(a, b) - 1;

  Matrix p = proportion_matrix(table);
  MarginMasses m = masses(p);
  Matrix scaled = scaled_matrix(p, m.row, m.col);

  // The uncentered scaled matrix must carry the trivial axis: leading
  // singular value 1, vectors proportional to the square-root masses.
  SvdResult uncentered = svd(scaled);
  double lead = uncentered.singular_values.empty() ? 0.0 : uncentered.singular_values[0];
  if (std::abs(lead - 1.0) > kTrivialTol) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "leading singular value %.12g, expected 1", lead);
    throw Error(ErrorCode::TrivialAxisMissing, buf);
  }

  // Deflate the known trivial triple exactly. A positional drop is ill-posed
  // when another singular value equals 1 (perfect association), deflation is
  // not.
  std::vector<double> sqrt_r(a), sqrt_c(b);
  for (std::size_t i = 0; i < a; ++i) sqrt_r[i] = std::sqrt(m.row[i]);
  for (std::size_t j = 0; j < b; ++j) sqrt_c[j] = std::sqrt(m.col[j]);
  Matrix centered(a, b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j)
      centered(i, j) = scaled(i, j) - sqrt_r[i] * sqrt_c[j];

  SvdResult core = svd(centered);

  CorrespondenceModel model;
  model.row_labels = table.row_labels;
  model.col_labels = table.col_labels;
  model.row_masses = m.row;
  model.col_masses = m.col;
  model.singular_values.resize(k_axes);
  model.principal_inertias.resize(k_axes);
  model.row_std = Matrix(a, k_axes);
  model.col_std = Matrix(b, k_axes);
  model.row_principal = Matrix(a, k_axes);
  model.col_principal = Matrix(b, k_axes);

  model.total_inertia = 0.0;
  for (std::size_t k = 0; k < k_axes; ++k) {
    double sigma = core.singular_values[k];
    if (sigma < kNullAxis) sigma = 0.0;
    model.singular_values[k] = sigma;
    model.principal_inertias[k] = sigma * sigma;
    model.total_inertia += sigma * sigma;
    for (std::size_t i = 0; i < a; ++i) {
      double std_coord = sigma == 0.0 ? 0.0 : core.left(i, k) / sqrt_r[i];
      model.row_std(i, k) = std_coord;
      model.row_principal(i, k) = std_coord * sigma;
    }
    for (std::size_t j = 0; j < b; ++j) {
      double std_coord = sigma == 0.0 ? 0.0 : core.right(j, k) / sqrt_c[j];
      model.col_std(j, k) = std_coord;
      model.col_principal(j, k) = std_coord * sigma;
    }
  }

  // Step-9 chi-square profile distances, straight from the formulas; the
  // coordinate identity d_i^2 = sum_k F_ik^2 is a cross-check, not the
  // definition.
  model.row_distances.resize(a);
  for (std::size_t i = 0; i < a; ++i) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < b; ++j) {
      double dev = p(i, j) / m.row[i] - m.col[j];
      d2 += dev * dev / m.col[j];
    }
    model.row_distances[i] = std::sqrt(d2);
  }
  model.col_distances.resize(b);
  for (std::size_t j = 0; j < b; ++j) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a; ++i) {
      double dev = p(i, j) / m.col[j] - m.row[i];
      d2 += dev * dev / m.row[i];
    }
    model.col_distances[j] = std::sqrt(d2);
  }
  return model;
}

std::vector<DimensionSummary> inertia_summary(const CorrespondenceModel& model) {
  std::vector<DimensionSummary> summary;
  summary.reserve(model.n_axes());
  double cumulative = 0.0;
  for (std::size_t k = 0; k < model.n_axes(); ++k) {
    double proportion = model.total_inertia > 0.0
                            ? model.principal_inertias[k] / model.total_inertia
                            : 0.0;
    cumulative += proportion;
    summary.push_back({static_cast<int>(k) + 1, model.singular_values[k],
                       model.principal_inertias[k], proportion, cumulative});
  }
  return summary;
}

CoordinatePair coordinates(const CorrespondenceModel& model, Normalization norm) {
  switch (norm) {
    case Normalization::principal:
      return {model.row_principal, model.col_principal};
    case Normalization::standard:
      return {model.row_std, model.col_std};
    case Normalization::symmetric: {
      CoordinatePair pair{model.row_std, model.col_std};
      for (std::size_t k = 0; k < model.n_axes(); ++k) {
        double scale = std::sqrt(model.singular_values[k]);
        for (std::size_t i = 0; i < pair.rows.rows(); ++i) pair.rows(i, k) *= scale;
        for (std::size_t j = 0; j < pair.cols.rows(); ++j) pair.cols(j, k) *= scale;
      }
      return pair;
    }
  }
  throw Error(ErrorCode::UnknownNormalization, "invalid enum value");
}

}  // namespace ca
