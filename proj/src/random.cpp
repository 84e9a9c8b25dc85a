#include "framelab/random.hpp"

namespace framelab {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CVector Rng::complex_vector(Index n) {
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = complex_normal();
  return v;
}

CMatrix Rng::complex_matrix(Index rows, Index cols) {
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  }
  return m;
}

CMatrix Rng::unitary(Index n) {
  Eigen::HouseholderQR<CMatrix> qr(complex_matrix(n, n));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

CMatrix Rng::with_singular_values(Index rows, Index cols, const RVector& sigma) {
  CMatrix core = CMatrix::Zero(rows, cols);
  for (Index i = 0; i < sigma.size() && i < rows && i < cols; ++i) core(i, i) = sigma(i);
  return unitary(rows) * core * unitary(cols).adjoint();
}

}  // namespace framelab
