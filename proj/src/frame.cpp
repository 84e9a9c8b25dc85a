#include "framelab/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace framelab {

Frame::Frame(CMatrix synthesis, TolerancePolicy tol) : synthesis_(std::move(synthesis)), tol_(tol) {
  tol_.validate();
  if (synthesis_.rows() < 1 || synthesis_.cols() < 1) {
    throw Error(ErrorKind::InvalidArgument, "a frame needs d >= 1 and n >= 1");
  }
  require_finite(synthesis_, "frame synthesis matrix");
}

CMatrix Frame::frame_operator() const {
  CMatrix s = synthesis_ * synthesis_.adjoint();
  return 0.5 * (s + s.adjoint());
}

CMatrix Frame::gram() const { return synthesis_.adjoint() * synthesis_; }

Index Frame::rank() const { return svd(synthesis_, tol_).rank; }

namespace {

void require_frame(const Frame& fr, const char* op) {
  if (!fr.is_frame()) {
    throw Error(ErrorKind::NotAFrame, std::string(op) + ": vectors do not span C^d");
  }
}

CMatrix complex_sqrt_unitary(const CMatrix& contraction, const TolerancePolicy& tol) {
  // For Hermitian 0 <= X <= I, W = X + i (I - X^2)^{1/2} is unitary and
  // (W + W*) / 2 = X.
  const EigenDecomposition e = hermitian_eig(contraction, tol);
  CVector phases(e.values.size());
  for (Index i = 0; i < e.values.size(); ++i) {
    const double x = std::clamp(e.values(i), -1.0, 1.0);
    phases(i) = Complex(x, std::sqrt(std::max(0.0, 1.0 - x * x)));
  }
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

}  // namespace

FrameDiagnostics diagnostics(const Frame& fr) {
  const TolerancePolicy& tol = fr.tolerance();
  const CMatrix s = fr.frame_operator();
  const EigenDecomposition e = hermitian_eig(s, tol);
  FrameDiagnostics out;
  out.upper = std::max(0.0, e.values(e.values.size() - 1));
  out.lower = std::clamp(e.values(0), 0.0, out.upper);
  const Index rank = fr.rank();
  out.is_frame = rank == fr.dim();
  out.excess = fr.size() - rank;
  out.is_tight = out.is_frame && (out.upper - out.lower) <= tol.rel_eq * out.upper;
  out.is_normalized_tight = out.is_tight && std::abs(out.lower - 1.0) <= tol.rel_eq &&
                            std::abs(out.upper - 1.0) <= tol.rel_eq;
  out.is_exact = out.is_frame && fr.size() == fr.dim();
  if (out.is_frame) out.condition = out.upper / out.lower;

  const CMatrix pairing_op = pseudoinverse(s, tol) * fr.synthesis();
  const double boundary_slack = tol.rel_eq * out.upper;
  out.per_vector.reserve(static_cast<std::size_t>(fr.size()));
  for (Index i = 0; i < fr.size(); ++i) {
    VectorDiagnostics v;
    v.norm_sq = fr.synthesis().col(i).squaredNorm();
    v.position = (out.upper > 0.0 && v.norm_sq >= out.upper - boundary_slack)
                     ? VectorPosition::Boundary
                     : VectorPosition::Interior;
    v.dual_pairing = fr.synthesis().col(i).dot(pairing_op.col(i)).real();
    v.in_span_of_rest = v.dual_pairing < 1.0 - tol.rel_eq;
    out.per_vector.push_back(v);
  }
  return out;
}

DualFrame canonical_dual(const Frame& fr) {
  require_frame(fr, "canonical_dual");
  const CMatrix s_inv = psd_power(fr.frame_operator(), PsdExponent::MinusOne, fr.tolerance());
  return {s_inv * fr.synthesis(), true};
}

bool is_dual(const Frame& fr, const CMatrix& h) {
  if (h.rows() != fr.dim() || h.cols() != fr.size()) {
    throw Error(ErrorKind::ShapeMismatch, "dual candidate must be d x n");
  }
  const Index d = fr.dim();
  const CMatrix defect = fr.synthesis() * h.adjoint() - CMatrix::Identity(d, d);
  return defect.norm() <= fr.tolerance().rel_eq * std::sqrt(static_cast<double>(d));
}

CMatrix DualParametrization::dual(const CMatrix& coefficients) const {
  if (coefficients.rows() != canonical.vectors.rows() || coefficients.cols() != kernel.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "dual coefficients must be d x (n - rank)");
  }
  return canonical.vectors + coefficients * kernel.adjoint();
}

DualParametrization dual_parametrization(const Frame& fr) {
  require_frame(fr, "dual_parametrization");
  return {canonical_dual(fr), null_space(fr.synthesis(), fr.tolerance())};
}

Frame canonical_tight(const Frame& fr) {
  require_frame(fr, "canonical_tight");
  const CMatrix s_mhalf = psd_power(fr.frame_operator(), PsdExponent::MinusHalf, fr.tolerance());
  return fr.with_synthesis(s_mhalf * fr.synthesis());
}

bool frames_equivalent(const Frame& a, const Frame& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::CountMismatch, "equivalence needs equal vector counts");
  }
  // Equal kernels iff equal row spaces; the row space has dimension <= d.
  return subspace_equal(a.synthesis().adjoint(), b.synthesis().adjoint(), a.tolerance());
}

MinimalNormCheck minimal_norm_check(const Frame& fr, const CVector& f, const CVector& b) {
  require_frame(fr, "minimal_norm_check");
  if (f.size() != fr.dim() || b.size() != fr.size()) {
    throw Error(ErrorKind::ShapeMismatch, "f must have length d and b length n");
  }
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() *
                          fr.synthesis().norm() * b.norm();
  if ((fr.synthesize(b) - f).norm() > fr.tolerance().rel_eq * f.norm() + rounding) {
    throw Error(ErrorKind::NotARepresentation, "F b differs from f");
  }
  const CMatrix s_inv = psd_power(fr.frame_operator(), PsdExponent::MinusOne, fr.tolerance());
  const CVector c = fr.analysis(s_inv * f);
  return {b.squaredNorm(), c.squaredNorm() + (c - b).squaredNorm()};
}

MomentSolution solve_moment(const Frame& fr, const CVector& a) {
  if (a.size() != fr.size()) {
    throw Error(ErrorKind::ShapeMismatch, "moment data must have length n");
  }
  const CMatrix analysis = fr.synthesis().adjoint();
  MomentSolution out;
  out.f = pseudoinverse(analysis, fr.tolerance()) * a;
  out.residual = (analysis * out.f - a).norm();
  out.solvable = out.residual <= fr.tolerance().rel_eq * a.norm();
  return out;
}

NaimarkDilation naimark_dilate(const Frame& fr, bool require_tight) {
  const Index d = fr.dim();
  NaimarkDilation out;
  CMatrix tight;
  if (require_tight) {
    const FrameDiagnostics diag = diagnostics(fr);
    if (!diag.is_normalized_tight) {
      throw Error(ErrorKind::NotNormalizedTight, "frame operator is not the identity");
    }
    tight = fr.synthesis();
    out.change_of_frame = CMatrix::Identity(d, d);
  } else {
    tight = canonical_tight(fr).synthesis();
    out.change_of_frame = psd_power(fr.frame_operator(), PsdExponent::Half, fr.tolerance());
  }
  out.embedding = tight.adjoint();
  out.projection = out.embedding * tight;
  out.projection = 0.5 * (out.projection + out.projection.adjoint());
  return out;
}

double hyperplane_energy(const Frame& fr, const CMatrix& v) {
  if (v.rows() != fr.dim()) {
    throw Error(ErrorKind::ShapeMismatch, "hyperplane basis must have d rows");
  }
  const Index k = v.cols();
  const CMatrix defect = v.adjoint() * v - CMatrix::Identity(k, k);
  if (defect.norm() > fr.tolerance().rel_eq * std::sqrt(static_cast<double>(std::max<Index>(k, 1)))) {
    throw Error(ErrorKind::NotOrthonormal, "hyperplane basis columns are not orthonormal");
  }
  return (v.adjoint() * fr.synthesis()).squaredNorm();
}

ThreeUnitaryDecomposition three_unitary_decomposition(const CMatrix& a, double eps,
                                                      const TolerancePolicy& tol) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::ShapeMismatch, "square matrix required");
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::InvalidArgument, "eps must lie in (0, 1)");
  const Index n = a.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const double norm = operator_norm(a);
  if (norm == 0.0) return {0.0, id, id, id};
  const CMatrix s = 0.5 * id + ((1.0 - eps) / (2.0 * norm)) * a;
  const PolarDecomposition pd = polar(s, tol);
  const CMatrix w = complex_sqrt_unitary(pd.positive, tol);
  return {norm / (1.0 - eps), pd.unitary * w, pd.unitary * w.adjoint(), -id};
}

TwoUnitaryDecomposition two_unitary_decomposition(const CMatrix& a, const TolerancePolicy& tol) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::ShapeMismatch, "square matrix required");
  const Index n = a.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const double norm = operator_norm(a);
  if (norm == 0.0) return {0.0, id, -id};
  const PolarDecomposition pd = polar(a, tol);
  const CMatrix w = complex_sqrt_unitary(pd.positive / norm, tol);
  return {norm, pd.unitary * w, pd.unitary * w.adjoint()};
}

std::vector<Index> select_riesz_subset(const Frame& fr) {
  const Index r = fr.rank();
  CMatrix residual = fr.synthesis();
  std::vector<Index> chosen;
  std::vector<bool> taken(static_cast<std::size_t>(fr.size()), false);
  for (Index step = 0; step < r; ++step) {
    const RVector norms = residual.colwise().norm();
    double best = -1.0;
    for (Index j = 0; j < norms.size(); ++j) {
      if (!taken[static_cast<std::size_t>(j)]) best = std::max(best, norms(j));
    }
    Index pick = -1;
    for (Index j = 0; j < norms.size(); ++j) {
      if (!taken[static_cast<std::size_t>(j)] && norms(j) >= best * (1.0 - fr.tolerance().rel_eq)) {
        pick = j;
        break;
      }
    }
    if (pick < 0 || best <= 0.0) break;
    taken[static_cast<std::size_t>(pick)] = true;
    chosen.push_back(pick);
    const CVector q = residual.col(pick) / norms(pick);
    residual -= q * (q.adjoint() * residual);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::pair<double, double> span_bounds(const CMatrix& vectors, const TolerancePolicy& tol) {
  CMatrix s = vectors * vectors.adjoint();
  s = 0.5 * (s + s.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(s, Eigen::EigenvaluesOnly);
  const RVector& lam = solver.eigenvalues();
  const double top = lam(lam.size() - 1);
  if (!(top > 0.0)) return {0.0, 0.0};
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam(i) > tol.rank_rel * top) return {lam(i), top};
  }
  return {top, top};
}

RieszFrameCheck riesz_frame_check(const Frame& fr, std::uint64_t max_subsets, SubsetMode mode,
                                  std::uint64_t seed) {
  const Index n = fr.size();
  constexpr Index kExhaustiveLimit = 20;
  if (mode == SubsetMode::Auto) {
    mode = n <= kExhaustiveLimit ? SubsetMode::Exhaustive : SubsetMode::Sampled;
  }
  if (mode == SubsetMode::Exhaustive && n > kExhaustiveLimit) {
    throw Error(ErrorKind::TooLarge, "exhaustive subset enumeration is limited to n <= 20");
  }
  const TolerancePolicy& tol = fr.tolerance();
  const auto [full_lower, full_upper] = span_bounds(fr.synthesis(), tol);
  const double slack = tol.rel_eq * std::max(full_upper, 1.0);

  RieszFrameCheck out;
  out.worst_lower = full_lower;
  out.worst_upper = full_upper;
  bool have_worst = false;
  std::vector<Index> members;
  auto visit = [&](const std::vector<Index>& subset) {
    CMatrix cols(fr.dim(), static_cast<Index>(subset.size()));
    for (std::size_t c = 0; c < subset.size(); ++c) {
      cols.col(static_cast<Index>(c)) = fr.synthesis().col(subset[c]);
    }
    ++out.subsets_checked;
    const auto [lo, hi] = span_bounds(cols, tol);
    if (hi == 0.0) return;  // span {0}: vacuous
    if (lo < full_lower - slack || hi > full_upper + slack) out.is_riesz_frame = false;
    if (!have_worst || lo < out.worst_lower) {
      have_worst = true;
      out.worst_lower = lo;
      out.worst_upper = hi;
      out.worst_subset = subset;
    }
  };

  if (mode == SubsetMode::Exhaustive) {
    const std::uint64_t total = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask = 1; mask <= total; ++mask) {
      members.clear();
      for (Index i = 0; i < n; ++i) {
        if (mask & (std::uint64_t{1} << i)) members.push_back(i);
      }
      visit(members);
    }
  } else {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    for (std::uint64_t s = 0; s < max_subsets; ++s) {
      members.clear();
      for (Index i = 0; i < n; ++i) {
        if (coin(rng)) members.push_back(i);
      }
      if (members.empty()) members.push_back(static_cast<Index>(rng() % static_cast<std::uint64_t>(n)));
      visit(members);
    }
  }
  return out;
}

Frame simplex_frame(Index n, TolerancePolicy tol) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "simplex frame needs n >= 1");
  CMatrix f = CMatrix::Zero(n, n + 1);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (Index j = 0; j < n; ++j) {
    f.col(j).setConstant(-inv_n);
    f(j, j) += 1.0;
  }
  f.col(n).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  return Frame(std::move(f), tol);
}

Frame staircase_frame(StaircaseKind kind, Index depth, TolerancePolicy tol) {
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "staircase depth must be >= 1");
  if (kind == StaircaseKind::RepeatStaircase) {
    CMatrix f = CMatrix::Zero(depth, depth * (depth + 1) / 2);
    Index col = 0;
    for (Index k = 1; k <= depth; ++k) {
      const double v = 1.0 / std::sqrt(static_cast<double>(k));
      for (Index copy = 0; copy < k; ++copy) f(k - 1, col++) = v;
    }
    return Frame(std::move(f), tol);
  }
  const Index dim = depth * (depth + 1) / 2;
  const Index count = dim + depth;
  CMatrix f = CMatrix::Zero(dim, count);
  Index row = 0;
  Index col = 0;
  for (Index n = 1; n <= depth; ++n) {
    const Frame block = simplex_frame(n, tol);
    f.block(row, col, n, n + 1) = block.synthesis();
    row += n;
    col += n + 1;
  }
  return Frame(std::move(f), tol);
}

}  // namespace framelab
