#pragma once

#include <vector>

#include "framelab/frame.hpp"

namespace framelab {

using IndexSets = std::vector<std::vector<Index>>;

/// {0}, {0,1}, ..., {0..n-1}.
IndexSets prefix_sections(Index n);

struct ProjectionClauses {
  double sup_inv_norm = 0.0;
  bool inv_norms_bounded = false;
  /// Per probe: |S^-1 P_m f - S^-1 f| is nonincreasing in m (1e-9 slack).
  std::vector<bool> projection_decay;
  /// Per stage: max over a kernel basis a of |S_m^+ sum_{i in I_m} a_i f_i| / |a|.
  std::vector<double> kernel_residuals;
  bool kernel_available = false;
};

struct ProjectionTrace {
  IndexSets index_sets;
  std::vector<double> inv_norms;                  // per stage
  std::vector<std::vector<double>> strong_errors;  // [probe][stage]
  std::vector<std::vector<double>> projection_errors;  // [probe][stage]
  ProjectionClauses clauses;
};

/// Throws BadIndexSets unless the sets are nonempty, nested, in range and
/// end with the full index set; ShapeMismatch on probes of the wrong length.
ProjectionTrace finite_sections(const Frame& fr, const IndexSets& sets, const std::vector<CVector>& probes);

struct ConditionalRieszReport {
  double sup_inv_norm = 0.0;
  std::vector<double> growth_profile;
};

ConditionalRieszReport conditional_riesz_report(const Frame& fr, const IndexSets& sets);

/// Pseudo-inverse of the partial frame operator of the columns in `set`,
/// taken on their span, with 1 / lambda_min^+ of that compression.
struct Section {
  CMatrix inverse;
  double inv_norm = 0.0;
  CMatrix span_basis;
};

Section section(const Frame& fr, const std::vector<Index>& set);

}  // namespace framelab
