// SPDX-License-Identifier: Apache-2.0
#include "spdiso/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace spdiso {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string json_matrix(const Matrix& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ",";
    out += "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += format_double(m(i, j));
    }
    out += "]";
  }
  out += "]";
  return out;
}

std::string json_rjs(const RjsSignature& sig) {
  std::string out = "{\"modulus\":" + format_double(sig.modulus) +
                    ",\"pos\":" + std::to_string(sig.pos_mult) +
                    ",\"neg\":" + std::to_string(sig.neg_mult) + ",\"rotations\":[";
  for (std::size_t i = 0; i < sig.rotations.size(); ++i) {
    if (i) out += ",";
    out += "{\"angle\":" + format_double(sig.rotations[i].angle) +
           ",\"mult\":" + std::to_string(sig.rotations[i].mult) + "}";
  }
  out += "]}";
  return out;
}

std::string json_rja(const RjaSignature& sig) {
  std::string out = "{\"modulus\":" + format_double(sig.modulus) +
                    ",\"pos\":" + std::to_string(sig.pos_mult) +
                    ",\"neg\":" + std::to_string(sig.neg_mult) +
                    ",\"imag_pairs\":" + std::to_string(sig.imag_pairs) + ",\"mixed\":[";
  for (std::size_t i = 0; i < sig.mixed.size(); ++i) {
    if (i) out += ",";
    out += "{\"angle\":" + format_double(sig.mixed[i].angle) +
           ",\"pos_pairs\":" + std::to_string(sig.mixed[i].pos_pairs) +
           ",\"neg_pairs\":" + std::to_string(sig.mixed[i].neg_pairs) + "}";
  }
  out += "]}";
  return out;
}

std::string json_classification(const EllipticityReport& rep) {
  std::string out = std::string("{\"elliptic\":") + (rep.elliptic ? "true" : "false") +
                    ",\"reason\":\"" + ellipticity_status_name(rep.reason) + "\",\"rjs\":";
  out += rep.rjs ? json_rjs(*rep.rjs) : "null";
  out += ",\"rja_of_u\":";
  out += rep.rja_of_u ? json_rja(*rep.rja_of_u) : "null";
  out += "}";
  return out;
}

std::string json_factor(const DeRhamFactor& factor) {
  std::string out = std::string("{\"kind\":\"") + factor_kind_name(factor.kind) + "\",\"params\":[";
  switch (factor.kind) {
    case FactorKind::So0ModSoSo:
    case FactorKind::SuModSu:
      out += std::to_string(factor.a) + "," + std::to_string(factor.b);
      break;
    default:
      out += std::to_string(factor.a);
      break;
  }
  out += "],\"dimension\":" + std::to_string(factor.dimension()) + "}";
  return out;
}

std::string json_locus(const FixedLocusDescriptor& desc) {
  std::string out = std::string("{\"family\":\"") + family_name(desc.family) + "\"";
  out += ",\"dimension\":" + std::to_string(desc.dimension);
  out += ",\"det_constraint\":";
  out += desc.det_constraint ? format_double(*desc.det_constraint) : "null";
  out += ",\"signature\":";
  if (std::holds_alternative<RjsSignature>(desc.signature))
    out += "{\"type\":\"rjs\",\"value\":" + json_rjs(std::get<RjsSignature>(desc.signature)) + "}";
  else
    out += "{\"type\":\"rja\",\"value\":" + json_rja(std::get<RjaSignature>(desc.signature)) + "}";
  out += ",\"factors\":[";
  for (std::size_t i = 0; i < desc.factors.size(); ++i) {
    if (i) out += ",";
    out += json_factor(desc.factors[i]);
  }
  out += "],\"conjugator\":" + json_matrix(desc.conjugator) + "}";
  return out;
}

std::string json_input(const IsometrySpec& spec) {
  return "{\"n\":" + std::to_string(spec.order()) + ",\"data\":" + json_matrix(spec.m) +
         ",\"use_j\":" + (spec.use_j ? "true" : "false") +
         ",\"use_delta\":" + (spec.use_delta ? "true" : "false") + "}";
}

std::string text_factors(const std::vector<DeRhamFactor>& factors) {
  if (factors.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += ", ";
    const auto& f = factors[i];
    out += factor_kind_name(f.kind);
    out += "(" + std::to_string(f.a);
    if (f.kind == FactorKind::So0ModSoSo || f.kind == FactorKind::SuModSu)
      out += "," + std::to_string(f.b);
    out += ") dim " + std::to_string(f.dimension());
  }
  return out;
}

}  // namespace

LocusReport locus_report(const IsometrySpec& spec, int samples, std::uint64_t seed,
                         double tol_residual, const Tolerances& tol) {
  LocusReport rep;
  rep.spec = spec;
  rep.tol_residual = tol_residual;
  rep.tol_eig = tol.eig;
  rep.classification = classify(spec, tol);
  if (!rep.classification.elliptic) return rep;

  rep.locus = fix_locus(spec, tol);
  rep.residuals_ok = true;
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    try {
      const SpdPoint point = sample_point(*rep.locus, s);
      const double residual =
          (apply_isometry(spec, point).matrix() - point.matrix()).norm() / point.matrix().norm();
      const double det = std::exp(spd_log_det(point));
      rep.samples.push_back(SampleCheck{s, residual, det});
      if (!(residual <= tol_residual)) rep.residuals_ok = false;
    } catch (const Error&) {
      rep.residuals_ok = false;
    }
  }
  if (samples > 0) {
    rep.oracle_agrees = true;
    try {
      const int checks = std::min(samples, 3);
      for (int i = 0; i < checks; ++i) {
        const SpdPoint point = sample_point(*rep.locus, seed + static_cast<std::uint64_t>(i));
        const int oracle = tangent_dim_oracle(spec, point, tol);
        rep.oracle_dimension = oracle;
        if (oracle != rep.locus->dimension) rep.oracle_agrees = false;
      }
    } catch (const Error&) {
      rep.oracle_agrees = false;
    }
  }
  return rep;
}

std::string report_json(const LocusReport& rep) {
  std::string out = "{\"tool\":{\"name\":\"";
  out += kToolName;
  out += "\",\"version\":\"";
  out += kToolVersion;
  out += "\"},\"input\":" + json_input(rep.spec);
  out += ",\"tolerances\":{\"eig\":" + format_double(rep.tol_eig) +
         ",\"residual\":" + format_double(rep.tol_residual) + "}";
  out += ",\"classification\":" + json_classification(rep.classification);
  out += ",\"locus\":";
  out += rep.locus ? json_locus(*rep.locus) : "null";
  out += ",\"samples\":[";
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    if (i) out += ",";
    out += "{\"seed\":" + std::to_string(rep.samples[i].seed) +
           ",\"residual\":" + format_double(rep.samples[i].residual) +
           ",\"det\":" + format_double(rep.samples[i].det) + "}";
  }
  out += "],\"oracle\":{\"dimension\":";
  out += rep.oracle_dimension ? std::to_string(*rep.oracle_dimension) : "null";
  out += std::string(",\"agrees\":") + (rep.oracle_agrees ? "true" : "false") + "}";
  out += std::string(",\"residuals_ok\":") + (rep.residuals_ok ? "true" : "false") + "}";
  return out;
}

std::string classification_json(const IsometrySpec& spec, const EllipticityReport& rep) {
  return "{\"input\":" + json_input(spec) + ",\"classification\":" + json_classification(rep) +
         "}";
}

std::string classification_text(const IsometrySpec& spec, const EllipticityReport& rep) {
  std::ostringstream out;
  out << kToolName << " " << kToolVersion << "\n";
  out << "input: n=" << spec.order() << ", family=" << family_name(family_of(spec)) << "\n";
  out << "classification: " << (rep.elliptic ? "elliptic" : "not elliptic") << " ("
      << ellipticity_status_name(rep.reason) << ")\n";
  if (rep.rjs) {
    out << "standard form: modulus=" << format_double(rep.rjs->modulus)
        << ", pos=" << rep.rjs->pos_mult << ", neg=" << rep.rjs->neg_mult << ", rotations=[";
    for (std::size_t i = 0; i < rep.rjs->rotations.size(); ++i) {
      if (i) out << ", ";
      out << "(" << format_double(rep.rjs->rotations[i].angle) << " x "
          << rep.rjs->rotations[i].mult << ")";
    }
    out << "]\n";
  }
  if (rep.rja_of_u) {
    out << "auxiliary form of U: pos=" << rep.rja_of_u->pos_mult
        << ", neg=" << rep.rja_of_u->neg_mult << ", imag_pairs=" << rep.rja_of_u->imag_pairs
        << ", mixed=[";
    for (std::size_t i = 0; i < rep.rja_of_u->mixed.size(); ++i) {
      if (i) out << ", ";
      out << "(" << format_double(rep.rja_of_u->mixed[i].angle) << ": "
          << rep.rja_of_u->mixed[i].pos_pairs << "+" << rep.rja_of_u->mixed[i].neg_pairs << ")";
    }
    out << "]\n";
  }
  return out.str();
}

std::string report_text(const LocusReport& rep) {
  std::ostringstream out;
  out << classification_text(rep.spec, rep.classification);
  if (rep.locus) {
    out << "locus: dimension=" << rep.locus->dimension;
    if (rep.locus->det_constraint)
      out << ", det constraint=" << format_double(*rep.locus->det_constraint);
    out << "\n";
    out << "factors: " << text_factors(rep.locus->factors) << "\n";
  }
  if (!rep.samples.empty()) {
    double max_residual = 0.0;
    for (const auto& s : rep.samples) max_residual = std::max(max_residual, s.residual);
    out << "samples: " << rep.samples.size() << ", max residual=" << format_double(max_residual)
        << ", residuals " << (rep.residuals_ok ? "ok" : "FAILED") << "\n";
  }
  if (rep.oracle_dimension)
    out << "oracle dimension: " << *rep.oracle_dimension << " ("
        << (rep.oracle_agrees ? "agrees" : "DISAGREES") << ")\n";
  return out.str();
}

MatrixFile parse_matrix_file(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("parse_matrix_file: ") + e.what());
  }
  if (!doc.is_object())
    throw Error(ErrorCode::ParseError, "parse_matrix_file: top level must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw Error(ErrorCode::ParseError, "parse_matrix_file: missing integer field 'n'");
  const long long n = doc["n"].get<long long>();
  if (n < 2)
    throw Error(ErrorCode::ParseError, "parse_matrix_file: order must be at least 2");
  if (n > 4096)
    throw Error(ErrorCode::ParseError, "parse_matrix_file: order is unreasonably large");
  if (!doc.contains("data") || !doc["data"].is_array())
    throw Error(ErrorCode::ParseError, "parse_matrix_file: missing array field 'data'");
  const auto& rows = doc["data"];
  if (static_cast<long long>(rows.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "parse_matrix_file: row count does not match n");

  MatrixFile out;
  out.data.resize(n, n);
  for (long long i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<long long>(row.size()) != n)
      throw Error(ErrorCode::DimensionMismatch,
                  "parse_matrix_file: column count does not match n");
    for (long long j = 0; j < n; ++j) {
      const auto& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number())
        throw Error(ErrorCode::ParseError, "parse_matrix_file: matrix entries must be numbers");
      const double v = cell.get<double>();
      if (!std::isfinite(v))
        throw Error(ErrorCode::ParseError, "parse_matrix_file: matrix entries must be finite");
      out.data(i, j) = v;
    }
  }
  for (const char* key : {"use_j", "use_delta"}) {
    if (doc.contains(key) && !doc[key].is_boolean())
      throw Error(ErrorCode::ParseError,
                  std::string("parse_matrix_file: field '") + key + "' must be a boolean");
  }
  out.use_j = doc.value("use_j", false);
  out.use_delta = doc.value("use_delta", false);
  return out;
}

std::string matrix_file_json(const Matrix& m) {
  return "{\"n\":" + std::to_string(m.rows()) + ",\"data\":" + json_matrix(m) + "}";
}

}  // namespace spdiso
