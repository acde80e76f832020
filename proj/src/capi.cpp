// SPDX-License-Identifier: Apache-2.0
#include "spdiso.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "spdiso/report.hpp"

struct spdiso_matrix {
  spdiso::Matrix m;
};

struct spdiso_isometry {
  spdiso::IsometrySpec spec;
};

struct spdiso_report {
  spdiso::LocusReport rep;
};

namespace {

thread_local std::string t_last_error;

spdiso_status to_status(spdiso::ErrorCode code) {
  using spdiso::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return SPDISO_ERR_INVALID_ARGUMENT;
    case ErrorCode::ParseError: return SPDISO_ERR_PARSE;
    case ErrorCode::DimensionMismatch: return SPDISO_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NonSymmetric: return SPDISO_ERR_NON_SYMMETRIC;
    case ErrorCode::NotPositiveDefinite: return SPDISO_ERR_NOT_POSITIVE_DEFINITE;
    case ErrorCode::Singular: return SPDISO_ERR_SINGULAR;
    case ErrorCode::ConvergenceFailure: return SPDISO_ERR_CONVERGENCE_FAILURE;
    case ErrorCode::NotInImage: return SPDISO_ERR_NOT_IN_IMAGE;
    case ErrorCode::NotOrthogonal: return SPDISO_ERR_NOT_ORTHOGONAL;
    case ErrorCode::NotSemisimple: return SPDISO_ERR_NOT_SEMISIMPLE;
    case ErrorCode::NonConstantModulus: return SPDISO_ERR_NON_CONSTANT_MODULUS;
    case ErrorCode::BasePointMismatch: return SPDISO_ERR_BASE_POINT_MISMATCH;
    case ErrorCode::NotElliptic: return SPDISO_ERR_NOT_ELLIPTIC;
    case ErrorCode::NotAFixedPoint: return SPDISO_ERR_NOT_A_FIXED_POINT;
    case ErrorCode::BlockExtractionFailure: return SPDISO_ERR_BLOCK_EXTRACTION;
  }
  return SPDISO_ERR_INTERNAL;
}

template <typename Fn>
spdiso_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const spdiso::Error& e) {
    t_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return SPDISO_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown error";
    return SPDISO_ERR_INTERNAL;
  }
}

spdiso_status invalid(const char* message) {
  t_last_error = message;
  return SPDISO_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

spdiso_status emit_string(const std::string& s, char** out) {
  *out = dup_string(s);
  if (!*out) {
    t_last_error = "allocation failure";
    return SPDISO_ERR_INTERNAL;
  }
  return SPDISO_OK;
}

spdiso::Tolerances with_eig(double tol_eig) {
  spdiso::Tolerances tol = spdiso::default_tolerances();
  if (tol_eig > 0.0) tol.eig = tol_eig;
  return tol;
}

}  // namespace

extern "C" {

const char* spdiso_version(void) { return spdiso::kToolVersion; }

const char* spdiso_status_name(spdiso_status status) {
  switch (status) {
    case SPDISO_OK: return "ok";
    case SPDISO_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SPDISO_ERR_PARSE: return "parse error";
    case SPDISO_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case SPDISO_ERR_NON_SYMMETRIC: return "not symmetric";
    case SPDISO_ERR_NOT_POSITIVE_DEFINITE: return "not positive definite";
    case SPDISO_ERR_SINGULAR: return "singular";
    case SPDISO_ERR_CONVERGENCE_FAILURE: return "convergence failure";
    case SPDISO_ERR_NOT_IN_IMAGE: return "not in image";
    case SPDISO_ERR_NOT_ORTHOGONAL: return "not orthogonal";
    case SPDISO_ERR_NOT_SEMISIMPLE: return "not semisimple";
    case SPDISO_ERR_NON_CONSTANT_MODULUS: return "non-constant modulus";
    case SPDISO_ERR_BASE_POINT_MISMATCH: return "base point mismatch";
    case SPDISO_ERR_NOT_ELLIPTIC: return "not elliptic";
    case SPDISO_ERR_NOT_A_FIXED_POINT: return "not a fixed point";
    case SPDISO_ERR_BLOCK_EXTRACTION: return "block extraction failure";
    case SPDISO_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* spdiso_last_error(void) { return t_last_error.c_str(); }

void spdiso_string_free(char* text) { std::free(text); }

spdiso_status spdiso_matrix_create(int n, const double* row_major, spdiso_matrix** out) {
  if (!out) return invalid("matrix_create: out is null");
  if (!row_major || n < 1) return invalid("matrix_create: need n >= 1 and data");
  return guarded([&] {
    auto handle = std::make_unique<spdiso_matrix>();
    handle->m.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) handle->m(i, j) = row_major[i * n + j];
    if (!handle->m.allFinite())
      throw spdiso::Error(spdiso::ErrorCode::InvalidArgument,
                          "matrix_create: entries must be finite");
    *out = handle.release();
    return SPDISO_OK;
  });
}

spdiso_status spdiso_matrix_parse(const char* json_text, spdiso_matrix** out) {
  if (!out) return invalid("matrix_parse: out is null");
  if (!json_text) return invalid("matrix_parse: text is null");
  return guarded([&] {
    spdiso::MatrixFile file = spdiso::parse_matrix_file(json_text);
    *out = new spdiso_matrix{std::move(file.data)};
    return SPDISO_OK;
  });
}

void spdiso_matrix_free(spdiso_matrix* m) { delete m; }

int spdiso_matrix_order(const spdiso_matrix* m) {
  return m ? static_cast<int>(m->m.rows()) : 0;
}

spdiso_status spdiso_matrix_copy_data(const spdiso_matrix* m, double* out, size_t capacity) {
  if (!m || !out) return invalid("matrix_copy_data: null argument");
  const size_t needed = static_cast<size_t>(m->m.rows()) * static_cast<size_t>(m->m.cols());
  if (capacity < needed) return invalid("matrix_copy_data: buffer too small");
  for (Eigen::Index i = 0; i < m->m.rows(); ++i)
    for (Eigen::Index j = 0; j < m->m.cols(); ++j) out[i * m->m.cols() + j] = m->m(i, j);
  return SPDISO_OK;
}

spdiso_status spdiso_matrix_to_json(const spdiso_matrix* m, char** out) {
  if (!m || !out) return invalid("matrix_to_json: null argument");
  return guarded([&] { return emit_string(spdiso::matrix_file_json(m->m), out); });
}

spdiso_status spdiso_isometry_create(const spdiso_matrix* m, int use_j, int use_delta,
                                     spdiso_isometry** out) {
  if (!m || !out) return invalid("isometry_create: null argument");
  return guarded([&] {
    *out = new spdiso_isometry{spdiso::make_isometry(m->m, use_j != 0, use_delta != 0)};
    return SPDISO_OK;
  });
}

spdiso_status spdiso_isometry_parse(const char* json_text, spdiso_isometry** out) {
  if (!out) return invalid("isometry_parse: out is null");
  if (!json_text) return invalid("isometry_parse: text is null");
  return guarded([&] {
    spdiso::MatrixFile file = spdiso::parse_matrix_file(json_text);
    *out = new spdiso_isometry{
        spdiso::make_isometry(std::move(file.data), file.use_j, file.use_delta)};
    return SPDISO_OK;
  });
}

void spdiso_isometry_free(spdiso_isometry* iso) { delete iso; }

int spdiso_isometry_order(const spdiso_isometry* iso) { return iso ? iso->spec.order() : 0; }

spdiso_status spdiso_apply(const spdiso_isometry* iso, const spdiso_matrix* point,
                           spdiso_matrix** out) {
  if (!iso || !point || !out) return invalid("apply: null argument");
  return guarded([&] {
    spdiso::SpdPoint p(point->m);
    *out = new spdiso_matrix{spdiso::apply_isometry(iso->spec, p).matrix()};
    return SPDISO_OK;
  });
}

spdiso_status spdiso_classify(const spdiso_isometry* iso, double tol_eig, int* elliptic,
                              const char** reason) {
  if (!iso || !elliptic) return invalid("classify: null argument");
  return guarded([&] {
    const spdiso::EllipticityReport rep = spdiso::classify(iso->spec, with_eig(tol_eig));
    *elliptic = rep.elliptic ? 1 : 0;
    if (reason) *reason = spdiso::ellipticity_status_name(rep.reason);
    return SPDISO_OK;
  });
}

spdiso_status spdiso_classify_to_json(const spdiso_isometry* iso, double tol_eig, char** out) {
  if (!iso || !out) return invalid("classify_to_json: null argument");
  return guarded([&] {
    const spdiso::EllipticityReport rep = spdiso::classify(iso->spec, with_eig(tol_eig));
    return emit_string(spdiso::classification_json(iso->spec, rep), out);
  });
}

spdiso_status spdiso_classify_to_text(const spdiso_isometry* iso, double tol_eig, char** out) {
  if (!iso || !out) return invalid("classify_to_text: null argument");
  return guarded([&] {
    const spdiso::EllipticityReport rep = spdiso::classify(iso->spec, with_eig(tol_eig));
    return emit_string(spdiso::classification_text(iso->spec, rep), out);
  });
}

spdiso_status spdiso_membership(const spdiso_isometry* iso, const spdiso_matrix* point,
                                double tol, int* member) {
  if (!iso || !point || !member) return invalid("membership: null argument");
  return guarded([&] {
    spdiso::SpdPoint p(point->m);
    const double use_tol = tol > 0.0 ? tol : spdiso::default_tolerances().residual;
    *member = spdiso::membership(iso->spec, p, use_tol) ? 1 : 0;
    return SPDISO_OK;
  });
}

spdiso_status spdiso_sample(const spdiso_isometry* iso, uint64_t seed, double scale,
                            spdiso_matrix** out) {
  if (!iso || !out) return invalid("sample: null argument");
  return guarded([&] {
    const spdiso::FixedLocusDescriptor desc = spdiso::fix_locus(iso->spec);
    const double use_scale = scale > 0.0 ? scale : 0.5;
    *out = new spdiso_matrix{spdiso::sample_point(desc, seed, use_scale).matrix()};
    return SPDISO_OK;
  });
}

spdiso_status spdiso_report_create(const spdiso_isometry* iso, int samples, uint64_t seed,
                                   double tol_residual, double tol_eig, spdiso_report** out) {
  if (!iso || !out) return invalid("report_create: null argument");
  if (samples < 0) return invalid("report_create: samples must be non-negative");
  return guarded([&] {
    const spdiso::Tolerances tol = with_eig(tol_eig);
    const double residual = tol_residual > 0.0 ? tol_residual : tol.residual;
    *out = new spdiso_report{spdiso::locus_report(iso->spec, samples, seed, residual, tol)};
    return SPDISO_OK;
  });
}

void spdiso_report_free(spdiso_report* report) { delete report; }

int spdiso_report_elliptic(const spdiso_report* report) {
  return report && report->rep.classification.elliptic ? 1 : 0;
}

int spdiso_report_dimension(const spdiso_report* report) {
  if (!report || !report->rep.locus) return -1;
  return report->rep.locus->dimension;
}

int spdiso_report_residuals_ok(const spdiso_report* report) {
  return report && report->rep.residuals_ok ? 1 : 0;
}

spdiso_status spdiso_report_sample_point(const spdiso_report* report, int index,
                                         spdiso_matrix** out) {
  if (!report || !out) return invalid("report_sample_point: null argument");
  if (!report->rep.locus) {
    t_last_error = "report_sample_point: isometry is not elliptic";
    return SPDISO_ERR_NOT_ELLIPTIC;
  }
  if (index < 0 || index >= static_cast<int>(report->rep.samples.size()))
    return invalid("report_sample_point: index out of range");
  return guarded([&] {
    const std::uint64_t seed = report->rep.samples[static_cast<std::size_t>(index)].seed;
    *out = new spdiso_matrix{spdiso::sample_point(*report->rep.locus, seed).matrix()};
    return SPDISO_OK;
  });
}

spdiso_status spdiso_report_to_json(const spdiso_report* report, char** out) {
  if (!report || !out) return invalid("report_to_json: null argument");
  return guarded([&] { return emit_string(spdiso::report_json(report->rep), out); });
}

spdiso_status spdiso_report_to_text(const spdiso_report* report, char** out) {
  if (!report || !out) return invalid("report_to_text: null argument");
  return guarded([&] { return emit_string(spdiso::report_text(report->rep), out); });
}

spdiso_status spdiso_distance(const spdiso_matrix* a, const spdiso_matrix* b, double* out) {
  if (!a || !b || !out) return invalid("distance: null argument");
  return guarded([&] {
    spdiso::SpdPoint pa(a->m);
    spdiso::SpdPoint pb(b->m);
    *out = spdiso::distance(pa, pb);
    return SPDISO_OK;
  });
}

spdiso_status spdiso_geodesic(const spdiso_matrix* a, const spdiso_matrix* b, double t,
                              spdiso_matrix** out) {
  if (!a || !b || !out) return invalid("geodesic: null argument");
  return guarded([&] {
    spdiso::SpdPoint pa(a->m);
    spdiso::SpdPoint pb(b->m);
    *out = new spdiso_matrix{spdiso::geodesic(pa, pb, t).matrix()};
    return SPDISO_OK;
  });
}

}  // extern "C"
