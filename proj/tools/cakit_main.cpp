#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "ca/association.hpp"
#include "ca/errors.hpp"
#include "ca/model.hpp"
#include "ca/render.hpp"
#include "ca/residuals.hpp"
#include "ca/table.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;    // input / validation problem
constexpr int kExitNumeric = 2;  // numerical failure
constexpr int kExitUsage = 64;   // bad flags

struct Options {
  std::string input_path;
  std::string layout = "matrix";
  std::string row_field, col_field, value_field;
  std::string normalization = "symmetric";
  std::vector<int> dims{1, 2};
  std::string output_dir;
  bool emit_report = true;
  bool emit_svg = true;
  bool emit_csv = true;
  std::size_t display_dims = 0;  // 0 = all
};

int classify(const ca::Error& err) {
  switch (err.code()) {
    case ca::ErrorCode::NonFinite:
    case ca::ErrorCode::ConvergenceFailure:
    case ca::ErrorCode::TrivialAxisMissing:
      return kExitNumeric;
    default:
      return kExitInput;
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ca::Error(ca::ErrorCode::BadValue, "cannot open input file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

// All artifacts are composed in memory first, then staged as temporaries and
// renamed into place, so a failed run never leaves partial outputs behind.
void write_outputs(const fs::path& dir, const std::vector<std::pair<std::string, std::string>>& files) {
  fs::create_directories(dir);
  std::vector<fs::path> staged;
  try {
    for (const auto& [name, content] : files) {
      fs::path tmp = dir / (name + ".partial");
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out.write(content.data(), static_cast<std::streamsize>(content.size()));
      out.close();
      if (!out) throw ca::Error(ca::ErrorCode::BadValue, "cannot write " + tmp.string());
      staged.push_back(tmp);
    }
    for (std::size_t i = 0; i < files.size(); ++i) fs::rename(staged[i], dir / files[i].first);
  } catch (...) {
    for (const auto& tmp : staged) {
      std::error_code ec;
      fs::remove(tmp, ec);
    }
    throw;
  }
}

int run(const Options& opt) {
  ca::ContingencyTable table;
  try {
    std::string text = read_file(opt.input_path);
    table = opt.layout == "long"
                ? ca::parse_long_csv(text, opt.row_field, opt.col_field, opt.value_field)
                : ca::parse_matrix_csv(text);
    ca::validate(table);
  } catch (const ca::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInput;
  }

  try {
    ca::CorrespondenceModel model = ca::fit(table);
    ca::ResidualTable resid = ca::residuals(table);
    ca::AssociationReport assoc = ca::flag_positive_only(ca::extract(resid));
    ca::Normalization norm = ca::parse_normalization(opt.normalization);

    std::vector<std::pair<std::string, std::string>> files;
    if (opt.emit_report)
      files.emplace_back("report.md", ca::emit_report(model, resid, assoc, opt.display_dims));
    if (opt.emit_svg) {
      auto doc = ca::biplot(model, norm, {opt.dims[0], opt.dims[1]});
      files.emplace_back("biplot.svg", ca::emit_svg(doc));
    }
    if (opt.emit_csv) {
      files.emplace_back("coordinates.csv", ca::coordinates_csv(model, norm));
      files.emplace_back("residuals.csv", ca::residuals_csv(resid));
      files.emplace_back("summary.csv", ca::summary_csv(model));
      files.emplace_back("associations.csv", ca::association_to_csv(assoc));
    }
    write_outputs(opt.output_dir, files);
    for (const auto& [name, content] : files)
      std::cout << (fs::path(opt.output_dir) / name).string() << "\n";
    return kExitOk;
  } catch (const ca::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return classify(err);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correspondence analysis of a two-way contingency table"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Fit the table, then write report, biplot, and CSV outputs");
  analyze->add_option("--input", opt.input_path, "input CSV file")->required();
  analyze->add_option("--layout", opt.layout, "input layout")
      ->check(CLI::IsMember({"long", "matrix"}));
  analyze->add_option("--row", opt.row_field, "row label column (long layout)");
  analyze->add_option("--col", opt.col_field, "column label column (long layout)");
  analyze->add_option("--value", opt.value_field, "value column (long layout)");
  analyze->add_option("--normalization", opt.normalization, "coordinate normalization")
      ->check(CLI::IsMember({"principal", "standard", "symmetric"}));
  analyze->add_option("--dims", opt.dims, "biplot axes (two 1-based indices)")
      ->expected(2);
  analyze->add_option("--out", opt.output_dir, "output directory")->required();
  analyze->add_flag("--report,!--no-report", opt.emit_report, "write report.md");
  analyze->add_flag("--svg,!--no-svg", opt.emit_svg, "write biplot.svg");
  analyze->add_flag("--csv,!--no-csv", opt.emit_csv, "write the CSV outputs");
  analyze->add_option("--display-dims", opt.display_dims,
                      "cap the number of dimensions shown in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (opt.dims[0] == opt.dims[1] || opt.dims[0] < 1 || opt.dims[1] < 1) {
    std::cerr << "error: --dims needs two distinct 1-based axes\n";
    return kExitUsage;
  }
  if (opt.layout == "long" &&
      (opt.row_field.empty() || opt.col_field.empty() || opt.value_field.empty())) {
    std::cerr << "error: --layout long requires --row, --col, and --value\n";
    return kExitUsage;
  }

  return run(opt);
}
