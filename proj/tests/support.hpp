#pragma once
// Test-only generators and brute-force oracles. Nothing here calls into the
// library's numerics, so agreement with it is an independent check.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace testing_support {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kTau = 6.283185307179586476925286766559;

// ------------------------------------------------------------------ generators

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed ^ 0x5bd1e995u) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  Index integer(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(engine_); }
  bool coin() { return (engine_() & 1u) != 0; }

  Complex complex() { return {normal(), normal()}; }

  CVector vector(Index n) {
    CVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = complex();
    return v;
  }

  CMatrix matrix(Index r, Index c) {
    CMatrix m(r, c);
    for (Index j = 0; j < c; ++j) {
      for (Index i = 0; i < r; ++i) m(i, j) = complex();
    }
    return m;
  }

  // Haar-like unitary: Gram-Schmidt on a Gaussian matrix.
  CMatrix unitary(Index n) {
    CMatrix q = matrix(n, n);
    for (Index j = 0; j < n; ++j) {
      for (Index k = 0; k < j; ++k) q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
      q.col(j).normalize();
    }
    return q;
  }

  // d x n with orthonormal rows: a normalized tight frame.
  CMatrix parseval(Index d, Index n) {
    const CMatrix u = unitary(n);
    return u.topRows(d);
  }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<Index> divisors_of(Index n) {
  std::vector<Index> out;
  for (Index k = 1; k <= n; ++k) {
    if (n % k == 0) out.push_back(k);
  }
  return out;
}

// --------------------------------------------------------------------- oracles

inline Index wrap(Index i, Index n) { return ((i % n) + n) % n; }

inline Complex phase(double turns) { return std::polar(1.0, kTau * turns); }

inline CVector naive_dft(const CVector& x, int sign) {
  const Index n = x.size();
  CVector out = CVector::Zero(n);
  for (Index k = 0; k < n; ++k) {
    for (Index t = 0; t < n; ++t) {
      out(k) += x(t) * phase(static_cast<double>(sign) * static_cast<double>((k * t) % n) / static_cast<double>(n));
    }
  }
  return out;
}

// Column m*N + n holds exp(2 pi i m b t / L) g[t - n a].
inline CMatrix gabor_atoms(const CVector& g, Index a, Index b) {
  const Index len = g.size();
  const Index time_slots = len / a;
  const Index freq_slots = len / b;
  CMatrix out(len, time_slots * freq_slots);
  for (Index m = 0; m < freq_slots; ++m) {
    for (Index n = 0; n < time_slots; ++n) {
      for (Index t = 0; t < len; ++t) {
        out(t, m * time_slots + n) =
            phase(static_cast<double>((m * b * t) % len) / static_cast<double>(len)) * g(wrap(t - n * a, len));
      }
    }
  }
  return out;
}

// Sum of outer products, column by column.
inline CMatrix outer_sum(const CMatrix& f) {
  CMatrix s = CMatrix::Zero(f.rows(), f.rows());
  for (Index i = 0; i < f.cols(); ++i) s += f.col(i) * f.col(i).adjoint();
  return s;
}

// Eigenvalues through the general (non-Hermitian) solver, real parts sorted.
inline RVector general_eigenvalues(const CMatrix& a) {
  Eigen::ComplexEigenSolver<CMatrix> solver(a, false);
  RVector out = solver.eigenvalues().real();
  std::sort(out.data(), out.data() + out.size());
  return out;
}

// G[k][t] = sum_n g[t - n a] conj(g[t - n a - k M]).
inline CMatrix correlations(const CVector& g, Index a, Index b) {
  const Index len = g.size();
  const Index time_slots = len / a;
  const Index freq_slots = len / b;
  CMatrix out = CMatrix::Zero(b, a);
  for (Index k = 0; k < b; ++k) {
    for (Index t = 0; t < a; ++t) {
      for (Index n = 0; n < time_slots; ++n) {
        out(k, t) += g(wrap(t - n * a, len)) * std::conj(g(wrap(t - n * a - k * freq_slots, len)));
      }
    }
  }
  return out;
}

// Z[r][j] = sum_k g[r + k a] exp(2 pi i k j / N).
inline CMatrix zak(const CVector& g, Index a) {
  const Index len = g.size();
  const Index slots = len / a;
  CMatrix z = CMatrix::Zero(a, slots);
  for (Index r = 0; r < a; ++r) {
    for (Index j = 0; j < slots; ++j) {
      for (Index k = 0; k < slots; ++k) {
        z(r, j) += g(wrap(r + k * a, len)) * phase(static_cast<double>((k * j) % slots) / static_cast<double>(slots));
      }
    }
  }
  return z;
}

inline double rel_dev(const RVector& got, const RVector& want) {
  return (got - want).norm() / std::max(want.norm(), 1e-300);
}

inline double rel_dev(const CVector& got, const CVector& want) {
  return (got - want).norm() / std::max(want.norm(), 1e-300);
}

inline RVector sorted(RVector v) {
  std::sort(v.data(), v.data() + v.size());
  return v;
}

// Smallest eigenvalue among those above rel * max, or 0.
inline double positive_floor(const RVector& ascending, double rel) {
  const double top = ascending.size() ? ascending.maxCoeff() : 0.0;
  for (Index i = 0; i < ascending.size(); ++i) {
    if (ascending(i) > rel * top) return ascending(i);
  }
  return 0.0;
}

}  // namespace testing_support
