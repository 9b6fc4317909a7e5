#include "ca/table.hpp"

#include <functional>
#include <random>

#include "ca/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using ca::Error;
using ca::ErrorCode;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a ca::Error");
  return ErrorCode::BadValue;
}

}  // namespace

TEST_CASE("long csv: basic triples") {
  auto t = ca::parse_long_csv("state,cause,n\nA,x,10\nA,y,0\nB,x,0\nB,y,10\n", "state",
                              "cause", "n");
  REQUIRE(t.n_rows() == 2);
  REQUIRE(t.n_cols() == 2);
  CHECK(t.row_labels == std::vector<std::string>{"A", "B"});
  CHECK(t.col_labels == std::vector<std::string>{"x", "y"});
  CHECK(t.counts(0, 0) == 10.0);
  CHECK(t.counts(0, 1) == 0.0);
  CHECK(t.counts(1, 0) == 0.0);
  CHECK(t.counts(1, 1) == 10.0);
  CHECK(t.grand_total == 20.0);
}

TEST_CASE("long csv: duplicate pairs sum, then margin validation rejects 1x1") {
  auto t = ca::parse_long_csv("r,c,v\nA,x,3\nA,x,4\n", "r", "c", "v");
  REQUIRE(t.n_rows() == 1);
  REQUIRE(t.n_cols() == 1);
  CHECK(t.counts(0, 0) == 7.0);
  CHECK(code_of([&] { ca::validate(t); }) == ErrorCode::TooSmall);
}

TEST_CASE("long csv: field and value errors carry position") {
  CHECK(code_of([] { ca::parse_long_csv("a,b\nA,1\n", "a", "b", "missing"); }) ==
        ErrorCode::MissingField);
  CHECK(code_of([] { ca::parse_long_csv("", "a", "b", "c"); }) == ErrorCode::EmptyInput);
  CHECK(code_of([] { ca::parse_long_csv("a,b,c\n", "a", "b", "c"); }) == ErrorCode::EmptyInput);

  try {
    ca::parse_long_csv("r,c,v\nA,x,1\nB,y,oops\n", "r", "c", "v");
    FAIL("not reached");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadValue);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  CHECK(code_of([] { ca::parse_long_csv("r,c,v\nA,x,-1\n", "r", "c", "v"); }) ==
        ErrorCode::BadValue);
}

TEST_CASE("long csv: thousands separators are rejected, scientific accepted") {
  CHECK(code_of([] { ca::parse_long_csv("r,c,v\nA,x,\"1,234\"\n", "r", "c", "v"); }) ==
        ErrorCode::BadValue);
  auto t = ca::parse_long_csv("r,c,v\nA,x,1.5e2\nA,y,2\nB,x,1\nB,y,3\n", "r", "c", "v");
  CHECK(t.counts(0, 0) == 150.0);
}

TEST_CASE("matrix csv: basic grid") {
  auto t = ca::parse_matrix_csv(",x,y\nA,10,0\nB,0,10\n");
  CHECK(t.row_labels == std::vector<std::string>{"A", "B"});
  CHECK(t.col_labels == std::vector<std::string>{"x", "y"});
  CHECK(t.counts(0, 0) == 10.0);
  CHECK(t.counts(1, 1) == 10.0);
}

TEST_CASE("matrix csv: duplicate and ragged rows") {
  CHECK(code_of([] { ca::parse_matrix_csv(",x,y\nA,1,1\nA,2,2\n"); }) ==
        ErrorCode::DuplicateLabel);
  CHECK(code_of([] { ca::parse_matrix_csv(",x,y\nA,1,1\nB,1,1\n,x,y\n"); }) ==
        ErrorCode::BadValue);  // empty row label

  try {
    ca::parse_matrix_csv(",x\nA,1,2\n");
    FAIL("not reached");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RaggedRow);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("matrix csv: CRLF, BOM, and RFC-4180 quoting") {
  auto t = ca::parse_matrix_csv("\xEF\xBB\xBF,\"col,1\",\"col\"\"2\"\"\"\r\n\"A\nB\",1,2\r\nC,3,4\r\n");
  REQUIRE(t.n_rows() == 2);
  CHECK(t.col_labels[0] == "col,1");
  CHECK(t.col_labels[1] == "col\"2\"");
  CHECK(t.row_labels[0] == "A\nB");
  CHECK(t.counts(1, 1) == 4.0);
}

TEST_CASE("matrix csv: negative entries parse and are caught by validate") {
  auto t = ca::parse_matrix_csv(",x,y\nA,1,-1\nB,1,1\n");
  try {
    ca::validate(t);
    FAIL("not reached");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeEntry);
    CHECK(std::string(e.what()).find("\"A\"") != std::string::npos);
    CHECK(std::string(e.what()).find("\"y\"") != std::string::npos);
  }
}

TEST_CASE("validate: accepts, zero margins, idempotent") {
  auto t = ca::parse_matrix_csv(",x,y\nA,10,0\nB,0,10\n");
  const auto& same = ca::validate(t);
  CHECK(&same == &t);
  ca::validate(ca::validate(t));

  auto zero_col = ca::parse_matrix_csv(",x,y\nA,1,0\nB,2,0\n");
  try {
    ca::validate(zero_col);
    FAIL("not reached");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroMargin);
    CHECK(std::string(e.what()).find("\"y\"") != std::string::npos);
  }

  auto zero_row = ca::parse_matrix_csv(",x,y\nA,0,0\nB,2,1\n");
  CHECK(code_of([&] { ca::validate(zero_row); }) == ErrorCode::ZeroMargin);
}

TEST_CASE("serialize/parse round-trip is a fixed point") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> dim(2, 6);
  std::uniform_real_distribution<double> cell(0.0, 50.0);
  const std::vector<std::string> tricky = {"plain", "with,comma", "with\"quote",
                                           "with\nnewline", "trail "};
  for (int iter = 0; iter < 50; ++iter) {
    std::size_t a = dim(rng), b = dim(rng);
    ca::Matrix counts(a, b);
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < b; ++j) counts(i, j) = cell(rng);
    std::vector<std::string> rl(a), cl(b);
    for (std::size_t i = 0; i < a; ++i)
      rl[i] = tricky[i % tricky.size()] + "_r" + std::to_string(i);
    for (std::size_t j = 0; j < b; ++j)
      cl[j] = tricky[j % tricky.size()] + "_c" + std::to_string(j);
    auto table = ca::make_table(rl, cl, counts);

    std::string text = ca::to_matrix_csv(table);
    auto parsed = ca::parse_matrix_csv(text);
    CHECK(parsed.row_labels == table.row_labels);
    CHECK(parsed.col_labels == table.col_labels);
    CHECK(ca::to_matrix_csv(parsed) == text);
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < b; ++j)
        CHECK(parsed.counts(i, j) ==
              doctest::Approx(table.counts(i, j)).epsilon(1e-11));
  }
}

TEST_CASE("grand total is positive for valid tables") {
  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    auto t = oracle::random_table(seed);
    ca::validate(t);
    CHECK(t.grand_total > 0.0);
    double sum = 0.0;
    for (double v : t.counts.data()) sum += v;
    CHECK(t.grand_total == doctest::Approx(sum).epsilon(1e-12));
  }
}
