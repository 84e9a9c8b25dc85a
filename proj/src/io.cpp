#include "framelab/io.hpp"

#include <cmath>

namespace framelab {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

Index read_index(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    parse_fail(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return static_cast<Index>(v.get<long long>());
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    parse_fail(e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json real_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  parse_fail("expected a real number");
}

Json complex_json(Complex z) { return Json::array({real_json(z.real()), real_json(z.imag())}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {real_from_json(j[0]), real_from_json(j[1])};
  parse_fail("expected a complex number [re, im]");
}

Json vector_json(const CVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

CVector vector_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("expected an array of complex numbers");
  CVector out(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) out(static_cast<Index>(i)) = complex_from_json(j[i]);
  return out;
}

Json real_vector_json(const RVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(real_json(v(i)));
  return out;
}

Json real_vector_json(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(real_json(x));
  return out;
}

Json frame_json(const Frame& fr) {
  Json cols = Json::array();
  for (Index i = 0; i < fr.size(); ++i) cols.push_back(vector_json(fr.vector(i)));
  return Json{{"d", fr.dim()}, {"n", fr.size()}, {"columns", cols}};
}

CMatrix synthesis_from_json(const Json& j) {
  const Index d = read_index(j, "d");
  const Index n = read_index(j, "n");
  if (!j.contains("columns") || !j.at("columns").is_array()) parse_fail("missing array 'columns'");
  const Json& cols = j.at("columns");
  if (static_cast<Index>(cols.size()) != n) parse_fail("'columns' length differs from n");
  CMatrix out(d, n);
  for (Index i = 0; i < n; ++i) {
    const CVector c = vector_from_json(cols[static_cast<std::size_t>(i)]);
    if (c.size() != d) parse_fail("column length differs from d");
    out.col(i) = c;
  }
  return out;
}

Frame frame_from_json(const Json& j, TolerancePolicy tol) {
  CMatrix m = synthesis_from_json(j);
  try {
    return Frame(std::move(m), tol);
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

Json gabor_json(const GaborSystem& sys) {
  return Json{{"L", sys.length()}, {"a", sys.a()}, {"b", sys.b()}, {"window", vector_json(sys.window())}};
}

GaborSystem gabor_from_json(const Json& j) {
  const Index length = read_index(j, "L");
  const Index a = read_index(j, "a");
  const Index b = read_index(j, "b");
  if (!j.contains("window")) parse_fail("missing field 'window'");
  CVector g = vector_from_json(j.at("window"));
  if (g.size() != length) parse_fail("window length differs from L");
  return GaborSystem(std::move(g), a, b);
}

Json zak_json(const ZakArray& z, bool normalized) {
  const double scale = normalized ? 1.0 / std::sqrt(static_cast<double>(z.N)) : 1.0;
  Json rows = Json::array();
  for (Index r = 0; r < z.a; ++r) rows.push_back(vector_json(scale * z.values.row(r).transpose()));
  return Json{{"a", z.a}, {"N", z.N}, {"rows", rows}, {"normalized", normalized}};
}

ZakArray zak_from_json(const Json& j) {
  ZakArray z;
  z.a = read_index(j, "a");
  z.N = read_index(j, "N");
  if (!j.contains("rows") || !j.at("rows").is_array() || static_cast<Index>(j.at("rows").size()) != z.a) {
    parse_fail("'rows' must hold a rows");
  }
  const bool normalized = j.value("normalized", false);
  const double scale = normalized ? std::sqrt(static_cast<double>(z.N)) : 1.0;
  z.values.resize(z.a, z.N);
  for (Index r = 0; r < z.a; ++r) {
    const CVector row = vector_from_json(j.at("rows")[static_cast<std::size_t>(r)]);
    if (row.size() != z.N) parse_fail("Zak row length differs from N");
    z.values.row(r) = scale * row.transpose();
  }
  return z;
}

Json diagnostics_json(const FrameDiagnostics& diag) {
  Json vectors = Json::array();
  for (const VectorDiagnostics& v : diag.per_vector) {
    vectors.push_back(Json{{"norm_sq", real_json(v.norm_sq)},
                           {"position", v.position == VectorPosition::Boundary ? "boundary" : "interior"},
                           {"dual_pairing", real_json(v.dual_pairing)},
                           {"in_span_of_rest", v.in_span_of_rest}});
  }
  return Json{{"lower", real_json(diag.lower)},
              {"upper", real_json(diag.upper)},
              {"is_frame", diag.is_frame},
              {"is_tight", diag.is_tight},
              {"is_normalized_tight", diag.is_normalized_tight},
              {"is_exact", diag.is_exact},
              {"excess", diag.excess},
              {"condition", real_json(diag.condition.value_or(kInfinity))},
              {"vectors", vectors}};
}

namespace {

Json form_json(const FormCheck& c) {
  return Json{{"holds", c.holds}, {"label", to_string(c.certainty)}, {"worst_excess", real_json(c.worst_excess)}};
}

}  // namespace

Json perturbation_json(const PerturbationReport& r) {
  const MixedTest& c = r.mixed;
  return Json{
      {"lambda_pw", real_json(r.lambda_pw)},
      {"analysis_constant", real_json(r.analysis_constant)},
      {"synthesis_constant", real_json(r.synthesis_constant)},
      {"synthesis_condition", real_json(r.synthesis_condition)},
      {"mixed_criterion",
       Json{{"holds", c.hypothesis_holds},
            {"lhs", Json{{"lambda1", real_json(r.lambda1)},
                         {"lambda2", real_json(r.lambda2)},
                         {"mu", real_json(r.mu)},
                         {"gate", real_json(c.gate)}}},
            {"gate_holds", c.gate_holds},
            {"which", to_string(c.which)},
            {"analysis_form", form_json(c.analysis)},
            {"synthesis_form", form_json(c.synthesis)},
            {"conclusion_verified", c.conclusion_verified}}},
      {"verdicts", Json{{"g_is_frame", r.g_is_frame}, {"equivalent", r.equivalent}}}};
}

Json trace_json(const ProjectionTrace& t) {
  Json strong = Json::array();
  for (const auto& row : t.strong_errors) strong.push_back(real_vector_json(row));
  Json proj = Json::array();
  for (const auto& row : t.projection_errors) proj.push_back(real_vector_json(row));
  Json decay = Json::array();
  for (bool b : t.clauses.projection_decay) decay.push_back(b);
  return Json{{"index_sets", t.index_sets},
              {"inv_norms", real_vector_json(t.inv_norms)},
              {"strong_errors", strong},
              {"projection_errors", proj},
              {"clauses",
               Json{{"sup_inv_norm", real_json(t.clauses.sup_inv_norm)},
                    {"inv_norms_bounded", t.clauses.inv_norms_bounded},
                    {"projection_decay", decay},
                    {"kernel_available", t.clauses.kernel_available},
                    {"kernel_residuals", real_vector_json(t.clauses.kernel_residuals)}}}};
}

Json conditional_riesz_json(const ConditionalRieszReport& r) {
  return Json{{"sup_inv_norm", real_json(r.sup_inv_norm)}, {"growth_profile", real_vector_json(r.growth_profile)}};
}

Json translates_json(const TranslateSystem& ts, const TranslateClassification& cls) {
  return Json{{"L", ts.length()},
              {"b", ts.step()},
              {"verdict", to_string(cls.verdict)},
              {"A", real_json(cls.lower)},
              {"B", real_json(cls.upper)},
              {"p", real_vector_json(ts.power())}};
}

Json scan_json(Index length, const std::vector<ScanRow>& rows) {
  Json out = Json::array();
  for (const ScanRow& r : rows) {
    out.push_back(Json{{"L", length},
                       {"a", r.a},
                       {"b", r.b},
                       {"redundancy", real_json(r.redundancy)},
                       {"is_frame", r.is_frame},
                       {"lower", real_json(r.lower)},
                       {"upper", real_json(r.upper)}});
  }
  return out;
}

Json analyze_report(const Frame& fr) {
  const FrameDiagnostics diag = diagnostics(fr);
  Json out{{"d", fr.dim()}, {"n", fr.size()}, {"diagnostics", diagnostics_json(diag)}};
  if (diag.is_frame) {
    const DualFrame dual = canonical_dual(fr);
    const CMatrix defect = fr.synthesis() * dual.vectors.adjoint() - CMatrix::Identity(fr.dim(), fr.dim());
    const DualParametrization par = dual_parametrization(fr);
    out["duals"] = Json{{"canonical_reconstruction_defect", real_json(defect.norm())},
                        {"canonical_is_dual", is_dual(fr, dual.vectors)},
                        {"alternate_dual_dimension", par.kernel.cols() * fr.dim()}};
    const NaimarkDilation nd = naimark_dilate(fr, false);
    const CMatrix& p = nd.projection;
    out["naimark"] = Json{{"idempotence_defect", real_json((p * p - p).norm())},
                          {"trace", real_json(p.trace().real())},
                          {"trace_defect", real_json(std::abs(p.trace().real() - static_cast<double>(fr.dim())))}};
  }
  return out;
}

Json gabor_report(const GaborSystem& sys, TolerancePolicy tol) {
  const FrameOperatorBlocks blocks(sys, tol);
  const CcBounds cc = cc_bounds(sys);
  Json out{{"L", sys.length()}, {"a", sys.a()}, {"b", sys.b()},
           {"N", sys.time_slots()}, {"M", sys.freq_slots()},
           {"redundancy", real_json(sys.redundancy())}};
  out["bounds"] = Json{{"lower", real_json(blocks.lower())}, {"upper", real_json(blocks.upper())},
                       {"is_frame", blocks.is_frame()}};
  out["cc_bounds"] = Json{{"lower", real_json(cc.lower)}, {"upper", real_json(cc.upper)}};
  const TightClassification tc = tight_classification(sys, tol);
  out["tight"] = Json{{"tight_eigen", tc.tight_eigen},
                      {"corr_criterion", tc.corr_criterion},
                      {"adjoint_orthogonal", tc.adjoint_orthogonal},
                      {"norm_matches", tc.norm_matches},
                      {"fixed_point", tc.fixed_point},
                      {"consistent", tc.consistent()},
                      {"constant", real_json(tc.constant)},
                      {"normalized", tc.normalized}};
  const DualityVerdict dv = duality_verdict(sys, tol);
  out["duality"] = Json{{"is_frame", dv.is_frame}, {"adjoint_is_riesz_sequence", dv.adjoint_is_riesz_sequence}};
  if (blocks.is_frame()) {
    out["dual_window"] = vector_json(dual_window(sys, tol));
  } else {
    out["dual_window"] = nullptr;
  }
  if (sys.is_critical()) {
    out["zak_spectrum"] = real_vector_json(critical_spectrum(sys));
  }
  return out;
}

}  // namespace framelab
