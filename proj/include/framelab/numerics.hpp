#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "framelab/errors.hpp"

namespace framelab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Shared comparison thresholds. Every verdict in the library is taken
/// against one of these three numbers.
struct TolerancePolicy {
  double rel_eq = 1e-9;     // relative Frobenius equality
  double rank_rel = 1e-10;  // singular-value cutoff relative to sigma_max
  double psd_floor = 1e-10; // eigenvalue nonnegativity slack relative to lambda_max

  /// Throws InvalidArgument unless every field lies in (0, 1).
  void validate() const;
};

/// Throws InvalidArgument if any entry is NaN or infinite.
void require_finite(const CMatrix& a, const char* what = "matrix");

struct EigenDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // unitary, column i pairs with values[i]
};

struct SvdResult {
  CMatrix U;      // unitary rows x rows
  RVector sigma;  // descending, length min(rows, cols)
  CMatrix V;      // unitary cols x cols
  Index rank = 0; // #{sigma_i > rank_rel * sigma_max}
};

struct PolarDecomposition {
  CMatrix unitary;   // V
  CMatrix positive;  // P = (A*A)^{1/2}
};

enum class PsdExponent { Half, MinusHalf, MinusOne };

/// Eigen-decomposition of a Hermitian matrix. Eigenvectors are normalised so
/// their first non-negligible component is real and positive.
EigenDecomposition hermitian_eig(const CMatrix& a, const TolerancePolicy& tol = {});

/// Full singular value decomposition, a = U diag(sigma) V*.
SvdResult svd(const CMatrix& a, const TolerancePolicy& tol = {});

Index numerical_rank(const RVector& sigma_descending, const TolerancePolicy& tol = {});

/// Moore-Penrose inverse with singular values truncated at rank_rel.
CMatrix pseudoinverse(const CMatrix& a, const TolerancePolicy& tol = {});

/// Spectral power of a Hermitian PSD matrix. Negative eigenvalues inside the
/// psd_floor slack are clamped to zero first.
CMatrix psd_power(const CMatrix& a, PsdExponent p, const TolerancePolicy& tol = {});

/// a = V P with V unitary. For singular a the unitary completion on the kernel
/// block is the one closest to the identity.
PolarDecomposition polar(const CMatrix& a, const TolerancePolicy& tol = {});

/// Unnormalised DFT: X[j] = sum_t x[t] exp(sign * 2 pi i j t / L), sign = +-1.
CVector dft(const CVector& x, int sign);

/// Orthonormal basis of the column space (rank_rel truncation).
CMatrix orthonormal_range(const CMatrix& b, const TolerancePolicy& tol = {});

/// Orthonormal basis of the null space; cols x (cols - rank).
CMatrix null_space(const CMatrix& a, const TolerancePolicy& tol = {});

/// True iff the column spaces of b1 and b2 coincide.
bool subspace_equal(const CMatrix& b1, const CMatrix& b2, const TolerancePolicy& tol = {});

/// Largest singular value.
double operator_norm(const CMatrix& a);

/// Frobenius-relative comparison: ||a - b||_F <= rel_eq * max(||a||_F, ||b||_F, floor).
bool approx_equal(const CMatrix& a, const CMatrix& b, double rel, double floor = 1.0);

/// Phase exp(2 pi i * num / den) with num reduced modulo den first.
Complex unit_root(std::int64_t num, std::int64_t den);

}  // namespace framelab
