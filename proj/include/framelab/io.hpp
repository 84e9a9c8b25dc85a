#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "framelab/frame.hpp"
#include "framelab/gabor.hpp"
#include "framelab/perturb.hpp"
#include "framelab/projection.hpp"
#include "framelab/translates.hpp"
#include "framelab/zak.hpp"

namespace framelab {

/// Insertion-ordered so that reports serialise byte-identically.
using Json = nlohmann::ordered_json;

/// Throws ParseError with the parser message.
Json parse_json(std::string_view text);
/// Two-space indented, trailing newline.
std::string dump_json(const Json& j);

/// Non-finite values become the strings "inf", "-inf", "nan".
Json real_json(double v);
double real_from_json(const Json& j);

/// [re, im]; a bare number is read as a real scalar.
Json complex_json(Complex z);
Complex complex_from_json(const Json& j);

Json vector_json(const CVector& v);
CVector vector_from_json(const Json& j);
Json real_vector_json(const RVector& v);
Json real_vector_json(const std::vector<double>& v);

/// {"d", "n", "columns": [[[re, im], ...], ...]} with one entry per frame vector.
Json frame_json(const Frame& fr);
/// Throws ParseError on malformed input; n = 0 yields an empty d x 0 matrix.
CMatrix synthesis_from_json(const Json& j);
Frame frame_from_json(const Json& j, TolerancePolicy tol = {});

/// {"L", "a", "b", "window"}.
Json gabor_json(const GaborSystem& sys);
GaborSystem gabor_from_json(const Json& j);

/// {"a", "N", "rows", "normalized"}; normalized rows carry the 1/sqrt(N) factor.
Json zak_json(const ZakArray& z, bool normalized = false);
ZakArray zak_from_json(const Json& j);

Json diagnostics_json(const FrameDiagnostics& diag);
Json perturbation_json(const PerturbationReport& report);
Json trace_json(const ProjectionTrace& trace);
Json conditional_riesz_json(const ConditionalRieszReport& report);
Json translates_json(const TranslateSystem& ts, const TranslateClassification& cls);
Json scan_json(Index length, const std::vector<ScanRow>& rows);

/// Frame diagnostics plus dual and Naimark summaries.
Json analyze_report(const Frame& fr);
/// Bounds, CC bounds, tight record, duality verdict, dual window and, at
/// critical density, the Zak spectrum. All spectral data comes from the
/// block decomposition, so the content is independent of L.
Json gabor_report(const GaborSystem& sys, TolerancePolicy tol = {});

}  // namespace framelab
