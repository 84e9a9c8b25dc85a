#pragma once

#include <cstdint>
#include <vector>

#include "framelab/frame.hpp"
#include "framelab/numerics.hpp"

namespace framelab {

/// y[t] = x[(t - shift) mod L].
CVector translate(const CVector& x, std::int64_t shift);
/// y[t] = exp(2 pi i k t / L) x[t].
CVector modulate(const CVector& x, std::int64_t k);

/// Discrete Weyl-Heisenberg system on Z_L: atoms exp(2 pi i m b t / L) g[t - n a]
/// for m in [0, M), n in [0, N), with N = L / a and M = L / b. Modulation is
/// applied after translation.
class GaborSystem {
 public:
  GaborSystem(CVector window, Index a, Index b);

  Index length() const noexcept { return window_.size(); }
  Index a() const noexcept { return a_; }
  Index b() const noexcept { return b_; }
  Index time_slots() const noexcept { return length() / a_; }  // N
  Index freq_slots() const noexcept { return length() / b_; }  // M
  Index atom_count() const noexcept { return time_slots() * freq_slots(); }
  double redundancy() const noexcept {
    return static_cast<double>(length()) / static_cast<double>(a_ * b_);
  }
  bool is_critical() const noexcept { return a_ * b_ == length(); }
  const CVector& window() const noexcept { return window_; }

  GaborSystem with_window(CVector window) const { return GaborSystem(std::move(window), a_, b_); }

  CVector atom(Index m, Index n) const;
  /// Atoms of the adjoint lattice: exp(2 pi i m N t / L) g[t - n M], m in [0, a), n in [0, b).
  CVector adjoint_atom(Index m, Index n) const;

 private:
  CVector window_;
  Index a_;
  Index b_;
};

/// G[k][t] = sum_n g[t - n a] conj(h[t - n a - k M]), k in [0, b), t in [0, a).
/// With h = g this is the window autocorrelation carrying all of S.
struct CorrelationTable {
  Index a = 0;
  Index b = 0;
  Index freq_slots = 0;  // M
  CMatrix values;        // b x a

  Complex at(Index k, Index t) const { return values(k, t); }
};

CorrelationTable correlation_table(const GaborSystem& sys);
CorrelationTable cross_correlation_table(const GaborSystem& sys, const CVector& other);

/// All M N atoms as a frame of C^L; column m * N + n holds atom (m, n).
Frame atoms(const GaborSystem& sys, TolerancePolicy tol = {});
/// L x (a b) synthesis matrix of the adjoint-lattice atoms, column m * b + n.
CMatrix adjoint_atoms(const GaborSystem& sys);

inline constexpr Index kDenseLimit = 512;

/// S = F F* materialised densely. Throws TooLarge above kDenseLimit.
CMatrix frame_operator_direct(const GaborSystem& sys);

/// (S f)[t] = M sum_k f[t - k M] G[k][t mod a], O(L b).
CVector walnut_apply(const CorrelationTable& table, const CVector& f);
CVector walnut_apply(const GaborSystem& sys, const CVector& f);

/// Matrix-free direct application S f = sum <f, g_mn> g_mn, O(L M N).
CVector direct_apply(const GaborSystem& sys, const CVector& f);

/// S is block diagonal over residue classes mod M; each block is b x b with
/// entries M G[(j - j') mod b][(r + j M) mod a]. Exact spectrum and spectral
/// powers follow from the blocks without materialising S.
class FrameOperatorBlocks {
 public:
  explicit FrameOperatorBlocks(const GaborSystem& sys, TolerancePolicy tol = {});

  RVector spectrum() const;  // ascending, length L
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  bool is_frame() const noexcept {
    return enough_atoms_ && upper_ > 0.0 && lower_ > tol_.rank_rel * upper_;
  }
  CMatrix block(Index residue) const;
  CVector apply(const CVector& f) const;
  CVector apply_power(const CVector& f, PsdExponent p) const;

 private:
  Index length_;
  Index freq_slots_;
  Index b_;
  TolerancePolicy tol_;
  std::vector<EigenDecomposition> blocks_;
  double lower_ = 0.0;
  double upper_ = 0.0;
  bool enough_atoms_ = true;
};

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool is_frame = false;
};

FrameBounds gabor_frame_bounds(const GaborSystem& sys, TolerancePolicy tol = {});

struct WhFrameIdentity {
  double total = 0.0;  // sum |<f, g_mn>|^2
  double main = 0.0;   // F1
  double cross = 0.0;  // F2
};

WhFrameIdentity wh_frame_identity(const GaborSystem& sys, const CVector& f);

struct CcBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Row-sum estimates from the correlation table; lower > 0 certifies a frame.
CcBounds cc_bounds(const GaborSystem& sys);

struct TightClassification {
  bool tight_eigen = false;         // S = c I
  bool corr_criterion = false;      // G_0 = c / M, G_k = 0 for k != 0
  bool adjoint_orthogonal = false;  // adjoint atoms pairwise orthogonal
  bool norm_matches = false;        // g orthogonal to the other adjoint atoms, ||g||^2 = c a b / L
  bool fixed_point = false;         // frame with S g = c g
  double constant = 0.0;            // c as measured from the spectrum
  bool normalized = false;          // tight with c = 1

  bool consistent() const noexcept {
    return tight_eigen == corr_criterion && tight_eigen == adjoint_orthogonal &&
           tight_eigen == norm_matches && tight_eigen == fixed_point;
  }
};

TightClassification tight_classification(const GaborSystem& sys, TolerancePolicy tol = {});

/// Same window on the (L / b, L / a) lattice.
GaborSystem adjoint_system(const GaborSystem& sys);

struct DualityVerdict {
  bool is_frame = false;
  bool adjoint_is_riesz_sequence = false;
};

DualityVerdict duality_verdict(const GaborSystem& sys, TolerancePolicy tol = {});

/// Smallest eigenvalue of the adjoint-atom Gram matrix, from the top a b
/// eigenvalues of the adjoint system's frame operator. Zero when a b > L.
double adjoint_gram_lower(const GaborSystem& sys, TolerancePolicy tol = {});

/// <h, adjoint atom (m, n)> = 0 for (m, n) != (0, 0) and <h, g> = a b / L.
bool wexler_raz_check(const GaborSystem& sys, const CVector& h, TolerancePolicy tol = {});

/// S^{-1} g. Throws NotAFrame.
CVector dual_window(const GaborSystem& sys, TolerancePolicy tol = {});
/// S^{-1/2} g. Throws NotAFrame.
CVector canonical_tight_window(const GaborSystem& sys, TolerancePolicy tol = {});

/// Equal correlation tables. Throws ParameterMismatch for different (L, a, b).
bool same_frame_operator(const GaborSystem& g, const GaborSystem& h, TolerancePolicy tol = {});

struct WhEquivalence {
  bool equivalent = false;              // equal synthesis kernels
  bool adjoint_span_criterion = false;  // equal adjoint-system spans
  bool agree() const noexcept { return equivalent == adjoint_span_criterion; }
};

WhEquivalence wh_equivalent(const GaborSystem& g, const GaborSystem& h, TolerancePolicy tol = {});

enum class WindowKind { Box, PeriodizedGaussian, ShiftOrthogonalPc, RandomComplex };

struct WindowParams {
  double sigma = 0.0;                // periodized Gaussian width; <= 0 means sqrt(L)
  std::vector<Complex> coefficients; // piecewise-constant levels, one per a-block
  std::uint64_t seed = 0;            // random window seed
};

/// sqrt(b / L) on [0, a), zero elsewhere.
CVector box_window(Index length, Index a, Index b);
/// sum_{j=-3}^{3} exp(-pi ((t - L/2 + j L) / sigma)^2), unit l2 norm.
CVector periodized_gaussian(Index length, double sigma);
/// sqrt(b / L) c[floor(t / a)]; c must be orthogonal to its cyclic shifts.
CVector shift_orthogonal_pc(Index length, Index a, Index b, const std::vector<Complex>& c,
                            TolerancePolicy tol = {});
/// Reproducible unit-norm complex Gaussian window.
CVector random_complex_window(Index length, std::uint64_t seed);

CVector window_library(WindowKind kind, Index length, Index a, Index b, const WindowParams& params,
                       TolerancePolicy tol = {});

struct ScanRow {
  Index a = 0;
  Index b = 0;
  bool is_frame = false;
  double lower = 0.0;
  double upper = 0.0;
  double redundancy = 0.0;
};

std::vector<Index> divisors(Index n);

/// One row per divisor pair (a, b) of L.
std::vector<ScanRow> param_scan(const CVector& window, TolerancePolicy tol = {});

}  // namespace framelab
