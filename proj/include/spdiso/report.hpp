// SPDX-License-Identifier: Apache-2.0
#ifndef SPDISO_REPORT_HPP
#define SPDISO_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spdiso/fixlocus.hpp"

namespace spdiso {

inline constexpr const char* kToolName = "spdiso";
inline constexpr const char* kToolVersion = "0.1.0";

struct SampleCheck {
  std::uint64_t seed = 0;
  double residual = 0.0;  // relative fixed-point residual
  double det = 0.0;
};

struct LocusReport {
  IsometrySpec spec;
  EllipticityReport classification;
  std::optional<FixedLocusDescriptor> locus;
  std::vector<SampleCheck> samples;
  std::optional<int> oracle_dimension;
  bool oracle_agrees = false;
  bool residuals_ok = false;
  double tol_residual = 1e-8;
  double tol_eig = 1e-8;
};

// Classification, locus description and sample verification in one document.
// Sampling failures are recorded in the report rather than thrown.
LocusReport locus_report(const IsometrySpec& spec, int samples, std::uint64_t seed,
                         double tol_residual,
                         const Tolerances& tol = default_tolerances());

// Deterministic serialization: fixed key order, 17 significant digits.
std::string report_json(const LocusReport& report);
std::string report_text(const LocusReport& report);
std::string classification_json(const IsometrySpec& spec, const EllipticityReport& rep);
std::string classification_text(const IsometrySpec& spec, const EllipticityReport& rep);

// Input file schema: {"n": int, "data": [[row], ...], "use_j": bool,
// "use_delta": bool}; the flags default to false.
struct MatrixFile {
  Matrix data;
  bool use_j = false;
  bool use_delta = false;
};

MatrixFile parse_matrix_file(const std::string& json_text);
std::string matrix_file_json(const Matrix& m);

std::string format_double(double v);

}  // namespace spdiso

#endif
