#include "ca/model.hpp"

#include <cmath>

#include "ca/errors.hpp"
#include "ca/residuals.hpp"
#include "ca/svd.hpp"
#include "doctest.h"
#include "oracles.hpp"

namespace {

ca::ContingencyTable table_2x2(double a, double b, double c, double d) {
  ca::Matrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return ca::make_table({"A", "B"}, {"x", "y"}, m);
}

}  // namespace

TEST_CASE("proportion matrix") {
  auto p1 = ca::proportion_matrix(table_2x2(10, 0, 0, 10));
  CHECK(p1(0, 0) == 0.5);
  CHECK(p1(0, 1) == 0.0);
  CHECK(p1(1, 1) == 0.5);

  auto p2 = ca::proportion_matrix(table_2x2(1, 1, 1, 1));
  CHECK(p2(0, 0) == 0.25);

  auto p3 = ca::proportion_matrix(table_2x2(2, 1, 1, 1));
  CHECK(p3(0, 0) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(p3(0, 1) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("masses") {
  auto p = ca::proportion_matrix(table_2x2(10, 0, 0, 10));
  auto m = ca::masses(p);
  CHECK(m.row[0] == 0.5);
  CHECK(m.col[1] == 0.5);

  auto p2 = ca::proportion_matrix(table_2x2(2, 1, 1, 1));
  auto m2 = ca::masses(p2);
  CHECK(m2.row[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(m2.row[1] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(m2.col[0] == doctest::Approx(0.6).epsilon(1e-15));

  ca::Matrix uniform(3, 2, 1.0 / 6.0);
  auto m3 = ca::masses(uniform);
  CHECK(m3.row[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(m3.col[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("scaled matrix") {
  auto p = ca::proportion_matrix(table_2x2(10, 0, 0, 10));
  auto m = ca::masses(p);
  auto a = ca::scaled_matrix(p, m.row, m.col);
  CHECK(a(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a(0, 1) == 0.0);

  ca::Matrix up(2, 2, 0.25);
  auto um = ca::masses(up);
  auto ua = ca::scaled_matrix(up, um.row, um.col);
  CHECK(ua(0, 0) == doctest::Approx(0.5).epsilon(1e-15));

  // p = [[0.4,0.2],[0.2,0.2]]: direct evaluation of p_ij / sqrt(r_i c_j)
  auto p3 = ca::proportion_matrix(table_2x2(2, 1, 1, 1));
  auto m3 = ca::masses(p3);
  auto a3 = ca::scaled_matrix(p3, m3.row, m3.col);
  CHECK(a3(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(a3(0, 1) == doctest::Approx(0.2 / std::sqrt(0.24)).epsilon(1e-12));
  CHECK(a3(1, 0) == doctest::Approx(0.4082482905).epsilon(1e-9));
  CHECK(a3(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fit: uniform table has zero inertia and zero coordinates") {
  auto model = ca::fit(table_2x2(1, 1, 1, 1));
  REQUIRE(model.n_axes() == 1);
  CHECK(model.singular_values[0] == 0.0);
  CHECK(model.total_inertia == 0.0);
  CHECK(model.row_std(0, 0) == 0.0);
  CHECK(model.row_principal(0, 0) == 0.0);
  CHECK(model.col_std(1, 0) == 0.0);
  CHECK(model.row_distances[0] == 0.0);
}

TEST_CASE("fit: perfect association") {
  auto model = ca::fit(table_2x2(10, 0, 0, 10));
  REQUIRE(model.n_axes() == 1);
  CHECK(model.singular_values[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(model.total_inertia == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(model.row_distances[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(model.row_distances[1] == doctest::Approx(1.0).epsilon(1e-12));
  // profiles [1,0] / [0,1] sit at +-1 on the single axis, up to global sign
  CHECK(std::abs(model.row_principal(0, 0)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(model.row_principal(0, 0) == doctest::Approx(-model.row_principal(1, 0)).epsilon(1e-10));
}

TEST_CASE("fit: rejects tables that lost the trivial axis") {
  // an unvalidatable table smuggled straight into fit(): negative entry
  auto bad = table_2x2(2, -1, -1, 2);
  CHECK_THROWS_AS(ca::fit(bad), ca::Error);
}

TEST_CASE("fit invariants on random tables") {
  for (std::uint32_t seed = 0; seed < 60; ++seed) {
    auto table = oracle::random_table(seed);
    auto model = ca::fit(table);
    const std::size_t a = table.n_rows(), b = table.n_cols();
    REQUIRE(model.n_axes() == std::min(a, b) - 1);

    double r_sum = 0.0, c_sum = 0.0;
    for (double v : model.row_masses) r_sum += v;
    for (double v : model.col_masses) c_sum += v;
    CHECK(r_sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c_sum == doctest::Approx(1.0).epsilon(1e-12));

    for (double sv : model.singular_values) {
      CHECK(sv >= 0.0);
      CHECK(sv <= 1.0 + 1e-10);
    }

    // centroid identity
    for (std::size_t k = 0; k < model.n_axes(); ++k) {
      double row_centroid = 0.0, col_centroid = 0.0;
      for (std::size_t i = 0; i < a; ++i)
        row_centroid += model.row_masses[i] * model.row_principal(i, k);
      for (std::size_t j = 0; j < b; ++j)
        col_centroid += model.col_masses[j] * model.col_principal(j, k);
      CHECK(std::abs(row_centroid) <= 1e-9);
      CHECK(std::abs(col_centroid) <= 1e-9);
    }

    // distances recovered by the full coordinate expansion
    for (std::size_t i = 0; i < a; ++i) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < model.n_axes(); ++k)
        d2 += model.row_principal(i, k) * model.row_principal(i, k);
      CHECK(d2 == doctest::Approx(model.row_distances[i] * model.row_distances[i])
                      .epsilon(1e-9));
    }
    for (std::size_t j = 0; j < b; ++j) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < model.n_axes(); ++k)
        d2 += model.col_principal(j, k) * model.col_principal(j, k);
      CHECK(d2 == doctest::Approx(model.col_distances[j] * model.col_distances[j])
                      .epsilon(1e-9));
    }

    // total inertia = weighted squared distances
    double weighted = 0.0;
    for (std::size_t i = 0; i < a; ++i)
      weighted += model.row_masses[i] * model.row_distances[i] * model.row_distances[i];
    CHECK(weighted == doctest::Approx(model.total_inertia).epsilon(1e-10));

    // reconstitution of the proportions
    auto p = ca::proportion_matrix(table);
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < b; ++j) {
        double sum = 1.0;
        for (std::size_t k = 0; k < model.n_axes(); ++k)
          sum += model.row_std(i, k) * model.col_std(j, k) * model.singular_values[k];
        double reconstructed = model.row_masses[i] * model.col_masses[j] * sum;
        CHECK(std::abs(reconstructed - p(i, j)) <= 1e-9);
      }

    // chi-square link
    auto resid = ca::residuals(table);
    CHECK(model.total_inertia * table.grand_total ==
          doctest::Approx(resid.statistic).epsilon(1e-9));
  }
}

TEST_CASE("fit: independence null for outer-product tables") {
  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    auto table = oracle::outer_product_table(seed);
    auto model = ca::fit(table);
    CHECK(model.total_inertia <= 1e-12);
    for (double sv : model.singular_values) CHECK(sv <= 1e-7);
  }
}

TEST_CASE("fit: trivial axis of the uncentered matrix") {
  for (std::uint32_t seed = 200; seed < 220; ++seed) {
    auto table = oracle::random_table(seed);
    auto p = ca::proportion_matrix(table);
    auto m = ca::masses(p);
    auto scaled = ca::scaled_matrix(p, m.row, m.col);
    auto full = ca::svd(scaled);
    CHECK(std::abs(full.singular_values[0] - 1.0) <= 1e-8);
    // leading vectors match the square-root masses up to sign
    double flip = full.left(0, 0) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < table.n_rows(); ++i)
      CHECK(std::abs(flip * full.left(i, 0) - std::sqrt(m.row[i])) <= 1e-7);
    for (std::size_t j = 0; j < table.n_cols(); ++j)
      CHECK(std::abs(flip * full.right(j, 0) - std::sqrt(m.col[j])) <= 1e-7);

    // centering equivalence: dropping the trivial axis from the uncentered
    // SVD reproduces the model's singular values
    auto model = ca::fit(table);
    for (std::size_t k = 0; k < model.n_axes(); ++k)
      CHECK(std::abs(full.singular_values[k + 1] - model.singular_values[k]) <= 1e-9);
  }
}

TEST_CASE("fit: transposition swaps roles, singular values identical") {
  for (std::uint32_t seed = 300; seed < 310; ++seed) {
    auto table = oracle::random_table(seed);
    auto flipped = ca::make_table(table.col_labels, table.row_labels,
                                  table.counts.transposed());
    auto m1 = ca::fit(table);
    auto m2 = ca::fit(flipped);
    REQUIRE(m1.n_axes() == m2.n_axes());
    for (std::size_t k = 0; k < m1.n_axes(); ++k)
      CHECK(std::abs(m1.singular_values[k] - m2.singular_values[k]) <= 1e-12);
    for (std::size_t i = 0; i < m1.row_masses.size(); ++i)
      CHECK(std::abs(m1.row_masses[i] - m2.col_masses[i]) <= 1e-15);
  }
}

TEST_CASE("fit: scale invariance") {
  auto table = oracle::random_table(17);
  ca::Matrix scaled_counts = table.counts;
  for (double& v : scaled_counts.data()) v *= 3.75;
  auto big = ca::make_table(table.row_labels, table.col_labels, scaled_counts);
  auto m1 = ca::fit(table);
  auto m2 = ca::fit(big);
  for (std::size_t k = 0; k < m1.n_axes(); ++k)
    CHECK(std::abs(m1.singular_values[k] - m2.singular_values[k]) <= 1e-12);
  for (std::size_t i = 0; i < table.n_rows(); ++i) {
    CHECK(std::abs(m1.row_masses[i] - m2.row_masses[i]) <= 1e-12);
    for (std::size_t k = 0; k < m1.n_axes(); ++k)
      CHECK(std::abs(m1.row_principal(i, k) - m2.row_principal(i, k)) <= 1e-12);
  }
}

TEST_CASE("inertia summary") {
  auto perfect = ca::fit(table_2x2(10, 0, 0, 10));
  auto s = ca::inertia_summary(perfect);
  REQUIRE(s.size() == 1);
  CHECK(s[0].dimension == 1);
  CHECK(s[0].singular_value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s[0].inertia == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s[0].proportion == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s[0].cumulative == doctest::Approx(1.0).epsilon(1e-10));

  for (std::uint32_t seed = 400; seed < 410; ++seed) {
    auto model = ca::fit(oracle::random_table(seed));
    auto summary = ca::inertia_summary(model);
    double total = 0.0;
    for (const auto& d : summary) total += d.proportion;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(summary.back().cumulative == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("coordinates: three normalizations") {
  auto model = ca::fit(table_2x2(10, 0, 0, 10));
  auto principal = ca::coordinates(model, ca::Normalization::principal);
  auto standard = ca::coordinates(model, ca::Normalization::standard);
  auto symmetric = ca::coordinates(model, ca::Normalization::symmetric);
  // singular value 1 collapses all three normalizations
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(std::abs(principal.rows(i, 0) - standard.rows(i, 0)) <= 1e-9);
    CHECK(std::abs(principal.rows(i, 0) - symmetric.rows(i, 0)) <= 1e-9);
    CHECK(std::abs(std::abs(principal.rows(i, 0)) - 1.0) <= 1e-9);
  }

  auto uniform = ca::fit(table_2x2(1, 1, 1, 1));
  auto ustd = ca::coordinates(uniform, ca::Normalization::standard);
  CHECK(ustd.rows(0, 0) == 0.0);
  CHECK(ustd.cols(0, 0) == 0.0);

  // principal = standard scaled per axis by the singular value, exactly
  auto model2 = ca::fit(oracle::random_table(5));
  auto p2 = ca::coordinates(model2, ca::Normalization::principal);
  auto s2 = ca::coordinates(model2, ca::Normalization::standard);
  for (std::size_t i = 0; i < p2.rows.rows(); ++i)
    for (std::size_t k = 0; k < model2.n_axes(); ++k)
      CHECK(p2.rows(i, k) == s2.rows(i, k) * model2.singular_values[k]);
}

TEST_CASE("normalization names parse") {
  CHECK(ca::parse_normalization("principal") == ca::Normalization::principal);
  CHECK(ca::parse_normalization("standard") == ca::Normalization::standard);
  CHECK(ca::parse_normalization("symmetric") == ca::Normalization::symmetric);
  try {
    ca::parse_normalization("fancy");
    FAIL("not reached");
  } catch (const ca::Error& e) {
    CHECK(e.code() == ca::ErrorCode::UnknownNormalization);
  }
}
