#include "framelab/projection.hpp"

#include <algorithm>
#include <set>

namespace framelab {

IndexSets prefix_sections(Index n) {
  IndexSets out;
  out.reserve(static_cast<std::size_t>(n));
  std::vector<Index> current;
  for (Index i = 0; i < n; ++i) {
    current.push_back(i);
    out.push_back(current);
  }
  return out;
}

namespace {

void validate_sets(const Frame& fr, const IndexSets& sets) {
  if (sets.empty()) throw Error(ErrorKind::BadIndexSets, "no index sets given");
  std::set<Index> previous;
  for (const auto& s : sets) {
    if (s.empty()) throw Error(ErrorKind::BadIndexSets, "index sets must be nonempty");
    std::set<Index> current;
    for (Index i : s) {
      if (i < 0 || i >= fr.size()) throw Error(ErrorKind::BadIndexSets, "index out of range");
      if (!current.insert(i).second) throw Error(ErrorKind::BadIndexSets, "duplicate index in a set");
    }
    if (!std::includes(current.begin(), current.end(), previous.begin(), previous.end())) {
      throw Error(ErrorKind::BadIndexSets, "index sets must be nested");
    }
    previous = std::move(current);
  }
  if (static_cast<Index>(previous.size()) != fr.size()) {
    throw Error(ErrorKind::BadIndexSets, "last index set must contain every index");
  }
}

CMatrix columns(const CMatrix& m, const std::vector<Index>& set) {
  CMatrix out(m.rows(), static_cast<Index>(set.size()));
  for (std::size_t j = 0; j < set.size(); ++j) out.col(static_cast<Index>(j)) = m.col(set[j]);
  return out;
}

}  // namespace

Section section(const Frame& fr, const std::vector<Index>& set) {
  const CMatrix part = columns(fr.synthesis(), set);
  const EigenDecomposition eig = hermitian_eig(part * part.adjoint(), fr.tolerance());
  const Index d = fr.dim();
  const double top = eig.values(d - 1);
  Section out;
  out.inverse = CMatrix::Zero(d, d);
  if (!(top > 0.0)) {
    out.span_basis = CMatrix(d, 0);
    return out;
  }
  const double cutoff = fr.tolerance().rank_rel * top;
  Index first = 0;
  while (first < d && eig.values(first) <= cutoff) ++first;
  out.span_basis = eig.vectors.rightCols(d - first);
  for (Index k = first; k < d; ++k) {
    out.inverse += (1.0 / eig.values(k)) * eig.vectors.col(k) * eig.vectors.col(k).adjoint();
  }
  out.inv_norm = 1.0 / eig.values(first);
  return out;
}

ProjectionTrace finite_sections(const Frame& fr, const IndexSets& sets, const std::vector<CVector>& probes) {
  validate_sets(fr, sets);
  for (const CVector& p : probes) {
    if (p.size() != fr.dim()) throw Error(ErrorKind::ShapeMismatch, "probe length must equal d");
  }
  const CMatrix& synth = fr.synthesis();
  const Index stages = static_cast<Index>(sets.size());
  const Section full = section(fr, sets.back());
  const CMatrix kernel = null_space(synth, fr.tolerance());

  ProjectionTrace out;
  out.index_sets = sets;
  out.strong_errors.assign(probes.size(), std::vector<double>(static_cast<std::size_t>(stages), 0.0));
  out.projection_errors = out.strong_errors;
  out.clauses.kernel_available = kernel.cols() > 0;

  std::vector<CVector> full_inverse_probe;
  for (const CVector& p : probes) full_inverse_probe.push_back(full.inverse * p);

  for (Index m = 0; m < stages; ++m) {
    const auto& set = sets[static_cast<std::size_t>(m)];
    const Section sec = section(fr, set);
    out.inv_norms.push_back(sec.inv_norm);
    const CMatrix part = columns(synth, set);
    // Columns S_m^+ f_i and S^-1 f_i; coefficients <f, .> are h^* f.
    const CMatrix partial_duals = sec.inverse * part;
    const CMatrix full_duals = full.inverse * part;
    const CMatrix projector = sec.span_basis * sec.span_basis.adjoint();
    for (std::size_t q = 0; q < probes.size(); ++q) {
      const CVector diff = (partial_duals - full_duals).adjoint() * probes[q];
      out.strong_errors[q][static_cast<std::size_t>(m)] = diff.squaredNorm();
      const CVector proj = full.inverse * (projector * probes[q]);
      out.projection_errors[q][static_cast<std::size_t>(m)] = (proj - full_inverse_probe[q]).norm();
    }
    double kernel_worst = 0.0;
    for (Index k = 0; k < kernel.cols(); ++k) {
      CVector restricted(static_cast<Index>(set.size()));
      for (std::size_t j = 0; j < set.size(); ++j) restricted(static_cast<Index>(j)) = kernel(set[j], k);
      kernel_worst = std::max(kernel_worst, (sec.inverse * (part * restricted)).norm());
    }
    out.clauses.kernel_residuals.push_back(kernel_worst);
  }

  out.clauses.sup_inv_norm = *std::max_element(out.inv_norms.begin(), out.inv_norms.end());
  out.clauses.inv_norms_bounded = std::isfinite(out.clauses.sup_inv_norm);
  for (const auto& errs : out.projection_errors) {
    bool monotone = true;
    for (std::size_t m = 1; m < errs.size(); ++m) {
      if (errs[m] > errs[m - 1] + 1e-9 * std::max(1.0, errs[m - 1])) monotone = false;
    }
    out.clauses.projection_decay.push_back(monotone);
  }
  return out;
}

ConditionalRieszReport conditional_riesz_report(const Frame& fr, const IndexSets& sets) {
  validate_sets(fr, sets);
  ConditionalRieszReport out;
  for (const auto& set : sets) out.growth_profile.push_back(section(fr, set).inv_norm);
  out.sup_inv_norm = *std::max_element(out.growth_profile.begin(), out.growth_profile.end());
  return out;
}

}  // namespace framelab
