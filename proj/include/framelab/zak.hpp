#pragma once

#include <cstdint>
#include <vector>

#include "framelab/gabor.hpp"

namespace framelab {

/// Z[r][j] = sum_{k=0}^{N-1} g[(r + k a) mod L] exp(2 pi i k j / N) on the
/// fundamental domain r in [0, a), j in [0, N). Stored unnormalised; the
/// isometric version is Z / sqrt(N).
struct ZakArray {
  Index a = 0;
  Index N = 0;
  CMatrix values;  // a x N

  Index length() const noexcept { return a * N; }
};

/// Throws BadDivisor unless a | L.
ZakArray zak_forward(const CVector& g, Index a);

/// Throws ShapeMismatch unless the array matches L.
CVector zak_inverse(const ZakArray& z, Index length);

/// Quasi-periodic extension to all integer (r, j): a shift of r by a
/// multiplies by exp(-2 pi i j / N); j is N-periodic.
Complex zak_extend(const ZakArray& z, std::int64_t r, std::int64_t j);

/// Sorted {M |Z g[r][j]|^2}: the eigenvalues of S at a b = L.
/// Throws NotCriticalDensity otherwise.
RVector critical_spectrum(const GaborSystem& sys);

/// M max_{r,j} |sum_{k in ks} G[k][r] exp(-2 pi i k j / N)|, the norm of the
/// partial Walnut operator at critical density.
double walnut_partial_norm(const GaborSystem& sys, const std::vector<Index>& ks);

/// S_K f[t] = M sum_{k in ks} f[t - k M] G[k][t mod a].
CVector partial_walnut_apply(const GaborSystem& sys, const std::vector<Index>& ks, const CVector& f);

}  // namespace framelab
