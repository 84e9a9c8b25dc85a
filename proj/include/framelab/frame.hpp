#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "framelab/numerics.hpp"

namespace framelab {

/// A finite family of vectors in C^d, stored as its d x n synthesis matrix
/// (column i is f_i). The matrix is the preframe operator; its adjoint is the
/// analysis operator f -> (<f, f_i>)_i.
class Frame {
 public:
  explicit Frame(CMatrix synthesis, TolerancePolicy tol = {});

  Index dim() const noexcept { return synthesis_.rows(); }
  Index size() const noexcept { return synthesis_.cols(); }
  const CMatrix& synthesis() const noexcept { return synthesis_; }
  const TolerancePolicy& tolerance() const noexcept { return tol_; }
  CVector vector(Index i) const { return synthesis_.col(i); }

  /// S = F F*.
  CMatrix frame_operator() const;
  /// F* F.
  CMatrix gram() const;
  CVector analysis(const CVector& f) const { return synthesis_.adjoint() * f; }
  CVector synthesize(const CVector& c) const { return synthesis_ * c; }

  Index rank() const;
  /// rank(F) == d.
  bool is_frame() const { return rank() == dim(); }

  Frame with_synthesis(CMatrix synthesis) const { return Frame(std::move(synthesis), tol_); }

 private:
  CMatrix synthesis_;
  TolerancePolicy tol_;
};

enum class VectorPosition { Boundary, Interior };

struct VectorDiagnostics {
  double norm_sq = 0.0;
  VectorPosition position = VectorPosition::Interior;
  // <S^+ f_i, f_i>; equals 1 exactly when f_i is orthogonal-independent of the rest.
  double dual_pairing = 0.0;
  bool in_span_of_rest = false;
};

struct FrameDiagnostics {
  double lower = 0.0;   // lambda_min(S)
  double upper = 0.0;   // lambda_max(S)
  bool is_frame = false;
  bool is_tight = false;
  bool is_normalized_tight = false;
  bool is_exact = false;
  Index excess = 0;
  std::optional<double> condition;  // empty means +infinity
  std::vector<VectorDiagnostics> per_vector;
};

FrameDiagnostics diagnostics(const Frame& fr);

struct DualFrame {
  CMatrix vectors;  // d x n, column i is h_i
  bool canonical = false;
};

/// S^{-1} F. Throws NotAFrame.
DualFrame canonical_dual(const Frame& fr);

/// ||F H* - I||_F <= rel_eq sqrt(d). Throws ShapeMismatch.
bool is_dual(const Frame& fr, const CMatrix& h);

/// Every dual is canonical + C K* for a d x (n - rank) coefficient matrix C,
/// where K (n x (n - rank)) is an orthonormal basis of ker F.
struct DualParametrization {
  DualFrame canonical;
  CMatrix kernel;

  CMatrix dual(const CMatrix& coefficients) const;
  Index free_directions() const noexcept { return kernel.cols(); }
};

DualParametrization dual_parametrization(const Frame& fr);

/// S^{-1/2} F.
Frame canonical_tight(const Frame& fr);

/// Same vector count, equal synthesis kernels. Throws CountMismatch.
bool frames_equivalent(const Frame& a, const Frame& b);

struct MinimalNormCheck {
  double lhs = 0.0;  // sum |b_i|^2
  double rhs = 0.0;  // sum |c_i|^2 + sum |c_i - b_i|^2
};

/// b is any representation F b = f; c are the frame coefficients <f, S^{-1} f_i>.
MinimalNormCheck minimal_norm_check(const Frame& fr, const CVector& f, const CVector& b);

struct MomentSolution {
  CVector f;
  double residual = 0.0;  // ||F* f - a||
  bool solvable = false;  // residual within tolerance
};

/// Least-squares solution of <f, f_i> = a_i.
MomentSolution solve_moment(const Frame& fr, const CVector& a);

struct NaimarkDilation {
  CMatrix projection;       // n x n orthogonal projection P = F_t* F_t
  CMatrix embedding;        // n x d isometry F_t*
  CMatrix change_of_frame;  // d x d, F = change_of_frame * F_t (identity if already tight)
};

/// Throws NotNormalizedTight if require_tight and S != I.
NaimarkDilation naimark_dilate(const Frame& fr, bool require_tight);

/// sum_i ||P_{E^perp} f_i||^2 where the columns of v span E^perp.
double hyperplane_energy(const Frame& fr, const CMatrix& v);

struct ThreeUnitaryDecomposition {
  double scale = 0.0;
  CMatrix u1, u2, u3;
  CMatrix reconstruct() const { return scale * (u1 + u2 + u3); }
};

/// A = a (U1 + U2 + U3) by way of S = I/2 + ((1 - eps) / (2 ||A||)) A.
ThreeUnitaryDecomposition three_unitary_decomposition(const CMatrix& a, double eps,
                                                      const TolerancePolicy& tol = {});

struct TwoUnitaryDecomposition {
  double scale = 0.0;
  CMatrix u1, u2;
  CMatrix reconstruct() const { return 0.5 * scale * (u1 + u2); }
};

/// A = (a / 2)(U1 + U2), a = ||A||_op.
TwoUnitaryDecomposition two_unitary_decomposition(const CMatrix& a, const TolerancePolicy& tol = {});

/// Greedy residual-norm pivoting; ascending 0-based indices, size rank(F).
std::vector<Index> select_riesz_subset(const Frame& fr);

enum class SubsetMode { Auto, Exhaustive, Sampled };

struct RieszFrameCheck {
  bool is_riesz_frame = true;
  std::vector<Index> worst_subset;
  double worst_lower = 0.0;
  double worst_upper = 0.0;
  std::uint64_t subsets_checked = 0;
};

/// Checks that every subset is a frame for its span inside the full frame's
/// bounds. Auto enumerates when n <= 20 and samples otherwise.
RieszFrameCheck riesz_frame_check(const Frame& fr, std::uint64_t max_subsets,
                                  SubsetMode mode = SubsetMode::Auto, std::uint64_t seed = 0);

/// Bounds (lambda_min^+, lambda_max) of a family as a frame for its own span.
std::pair<double, double> span_bounds(const CMatrix& vectors, const TolerancePolicy& tol);

enum class StaircaseKind { RepeatStaircase, Block41 };

/// The n + 1 vector normalized tight frame e_j - (1/n) sum e_i, (1/sqrt n) sum e_i in C^n.
Frame simplex_frame(Index n, TolerancePolicy tol = {});

Frame staircase_frame(StaircaseKind kind, Index depth, TolerancePolicy tol = {});

}  // namespace framelab
