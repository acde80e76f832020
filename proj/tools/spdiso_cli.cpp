// SPDX-License-Identifier: Apache-2.0
//
// Command line front end for the spdiso shared library. Everything goes
// through the C API; exit codes are 0 (success / elliptic / member),
// 1 (not elliptic / not a member / residuals failed), 2 (input error).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <spdiso.h>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

struct MatrixDeleter {
  void operator()(spdiso_matrix* m) const { spdiso_matrix_free(m); }
};
struct IsometryDeleter {
  void operator()(spdiso_isometry* iso) const { spdiso_isometry_free(iso); }
};
struct ReportDeleter {
  void operator()(spdiso_report* rep) const { spdiso_report_free(rep); }
};

using MatrixHandle = std::unique_ptr<spdiso_matrix, MatrixDeleter>;
using IsometryHandle = std::unique_ptr<spdiso_isometry, IsometryDeleter>;
using ReportHandle = std::unique_ptr<spdiso_report, ReportDeleter>;

std::string take_string(char* text) {
  std::string out = text ? text : "";
  spdiso_string_free(text);
  return out;
}

[[noreturn]] void fail(const std::string& context) {
  std::cerr << "error: " << context << ": " << spdiso_last_error() << "\n";
  std::exit(kExitError);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    std::exit(kExitError);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

IsometryHandle load_isometry(const std::string& path) {
  const std::string text = read_file(path);
  spdiso_isometry* iso = nullptr;
  if (spdiso_isometry_parse(text.c_str(), &iso) != SPDISO_OK) fail(path);
  return IsometryHandle(iso);
}

MatrixHandle load_matrix(const std::string& path) {
  const std::string text = read_file(path);
  spdiso_matrix* m = nullptr;
  if (spdiso_matrix_parse(text.c_str(), &m) != SPDISO_OK) fail(path);
  return MatrixHandle(m);
}

std::string format17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_matrix_text(const spdiso_matrix* m) {
  const int n = spdiso_matrix_order(m);
  std::vector<double> data(static_cast<size_t>(n) * n);
  if (spdiso_matrix_copy_data(m, data.data(), data.size()) != SPDISO_OK) fail("matrix output");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) std::cout << " ";
      std::cout << format17(data[static_cast<size_t>(i) * n + j]);
    }
    std::cout << "\n";
  }
}

void print_matrix(const spdiso_matrix* m, bool as_json) {
  if (as_json) {
    char* text = nullptr;
    if (spdiso_matrix_to_json(m, &text) != SPDISO_OK) fail("matrix output");
    std::cout << take_string(text) << "\n";
  } else {
    print_matrix_text(m);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elliptic isometries of the SPD manifold with the trace metric"};
  app.set_version_flag("--version", std::string(spdiso_version()));
  app.require_subcommand(1);

  std::string input_path;
  std::string point_path;
  std::string sample_out;
  int samples = 10;
  std::uint64_t seed = 0;
  double tol_residual = 1e-8;
  double tol_eig = 0.0;  // 0 selects the library default
  double t_param = 0.5;
  bool as_json = false;
  bool as_text = false;

  auto add_format_flags = [&](CLI::App* cmd) {
    cmd->add_flag("--json", as_json, "machine-readable JSON output");
    cmd->add_flag("--text", as_text, "human-readable text output (default)");
  };

  CLI::App* classify_cmd = app.add_subcommand("classify", "decide ellipticity of an isometry");
  classify_cmd->add_option("input", input_path, "isometry file (JSON)")->required();
  classify_cmd->add_option("--tol-eig", tol_eig, "eigenvalue tolerance");
  add_format_flags(classify_cmd);

  auto add_locus_options = [&](CLI::App* cmd) {
    cmd->add_option("input", input_path, "isometry file (JSON)")->required();
    cmd->add_option("--samples", samples, "number of verified sample points")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", seed, "base seed for sampling");
    cmd->add_option("--tol,--tol-residual", tol_residual, "residual pass threshold");
    cmd->add_option("--tol-eig", tol_eig, "eigenvalue tolerance");
    cmd->add_option("--sample-out", sample_out, "write the first sample point to this file");
    add_format_flags(cmd);
  };
  CLI::App* locus_cmd = app.add_subcommand("locus", "describe the fixed locus");
  add_locus_options(locus_cmd);
  CLI::App* report_cmd = app.add_subcommand("report", "full locus report (alias of locus)");
  add_locus_options(report_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "check that a point is fixed");
  verify_cmd->add_option("input", input_path, "isometry file (JSON)")->required();
  verify_cmd->add_option("point", point_path, "point file (JSON)")->required();
  verify_cmd->add_option("--tol,--tol-residual", tol_residual, "residual pass threshold");

  CLI::App* geodesic_cmd = app.add_subcommand("geodesic", "trace-metric geodesic point");
  geodesic_cmd->add_option("a", input_path, "first SPD matrix file")->required();
  geodesic_cmd->add_option("b", point_path, "second SPD matrix file")->required();
  geodesic_cmd->add_option("--t", t_param, "curve parameter (0 gives a, 1 gives b)");
  add_format_flags(geodesic_cmd);

  CLI::App* distance_cmd = app.add_subcommand("distance", "trace-metric distance");
  distance_cmd->add_option("a", input_path, "first SPD matrix file")->required();
  distance_cmd->add_option("b", point_path, "second SPD matrix file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  if (classify_cmd->parsed()) {
    IsometryHandle iso = load_isometry(input_path);
    char* text = nullptr;
    const spdiso_status status =
        as_json ? spdiso_classify_to_json(iso.get(), tol_eig, &text)
                : spdiso_classify_to_text(iso.get(), tol_eig, &text);
    if (status != SPDISO_OK) fail("classify");
    std::cout << take_string(text) << (as_json ? "\n" : "");
    int elliptic = 0;
    if (spdiso_classify(iso.get(), tol_eig, &elliptic, nullptr) != SPDISO_OK) fail("classify");
    return elliptic ? kExitOk : kExitNegative;
  }

  if (locus_cmd->parsed() || report_cmd->parsed()) {
    IsometryHandle iso = load_isometry(input_path);
    spdiso_report* raw = nullptr;
    if (spdiso_report_create(iso.get(), samples, seed, tol_residual, tol_eig, &raw) != SPDISO_OK)
      fail("locus");
    ReportHandle report(raw);
    char* text = nullptr;
    const spdiso_status status = as_json ? spdiso_report_to_json(report.get(), &text)
                                         : spdiso_report_to_text(report.get(), &text);
    if (status != SPDISO_OK) fail("locus");
    std::cout << take_string(text) << (as_json ? "\n" : "");
    if (!spdiso_report_elliptic(report.get())) return kExitNegative;
    if (!sample_out.empty()) {
      spdiso_matrix* point = nullptr;
      if (spdiso_report_sample_point(report.get(), 0, &point) != SPDISO_OK) fail("sample-out");
      MatrixHandle handle(point);
      char* json = nullptr;
      if (spdiso_matrix_to_json(handle.get(), &json) != SPDISO_OK) fail("sample-out");
      std::ofstream out(sample_out, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write '" << sample_out << "'\n";
        return kExitError;
      }
      out << take_string(json) << "\n";
    }
    return spdiso_report_residuals_ok(report.get()) ? kExitOk : kExitNegative;
  }

  if (verify_cmd->parsed()) {
    IsometryHandle iso = load_isometry(input_path);
    MatrixHandle point = load_matrix(point_path);
    int member = 0;
    if (spdiso_membership(iso.get(), point.get(), tol_residual, &member) != SPDISO_OK)
      fail("verify");
    return member ? kExitOk : kExitNegative;
  }

  if (geodesic_cmd->parsed()) {
    MatrixHandle a = load_matrix(input_path);
    MatrixHandle b = load_matrix(point_path);
    spdiso_matrix* raw = nullptr;
    if (spdiso_geodesic(a.get(), b.get(), t_param, &raw) != SPDISO_OK) fail("geodesic");
    MatrixHandle result(raw);
    print_matrix(result.get(), as_json);
    return kExitOk;
  }

  if (distance_cmd->parsed()) {
    MatrixHandle a = load_matrix(input_path);
    MatrixHandle b = load_matrix(point_path);
    double d = 0.0;
    if (spdiso_distance(a.get(), b.get(), &d) != SPDISO_OK) fail("distance");
    std::cout << format17(d) << "\n";
    return kExitOk;
  }

  return kExitError;
}
