#include "framelab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include <fftw3.h>

namespace framelab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NotAFrame: return "NotAFrame";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::CountMismatch: return "CountMismatch";
    case ErrorKind::NotARepresentation: return "NotARepresentation";
    case ErrorKind::NotNormalizedTight: return "NotNormalizedTight";
    case ErrorKind::NotOrthonormal: return "NotOrthonormal";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidCoefficients: return "InvalidCoefficients";
    case ErrorKind::BadDivisor: return "BadDivisor";
    case ErrorKind::NotCriticalDensity: return "NotCriticalDensity";
    case ErrorKind::ParameterMismatch: return "ParameterMismatch";
    case ErrorKind::BadIndexSets: return "BadIndexSets";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

void TolerancePolicy::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
      std::ostringstream os;
      os << name << " must lie in (0, 1), got " << v;
      throw Error(ErrorKind::InvalidArgument, os.str());
    }
  };
  check(rel_eq, "rel_eq");
  check(rank_rel, "rank_rel");
  check(psd_floor, "psd_floor");
}

void require_finite(const CMatrix& a, const char* what) {
  if (!a.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " has non-finite entries");
  }
}

namespace {

void normalise_phase(CMatrix& vectors) {
  for (Index c = 0; c < vectors.cols(); ++c) {
    auto col = vectors.col(c);
    const double scale = col.cwiseAbs().maxCoeff();
    if (scale == 0.0) continue;
    for (Index r = 0; r < col.size(); ++r) {
      if (std::abs(col(r)) > 1e-8 * scale) {
        const Complex phase = std::conj(col(r)) / std::abs(col(r));
        col *= phase;
        col(r) = Complex(col(r).real(), 0.0);
        break;
      }
    }
  }
}

}  // namespace

EigenDecomposition hermitian_eig(const CMatrix& a, const TolerancePolicy& tol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "hermitian_eig needs a square matrix");
  }
  const double norm = a.norm();
  if ((a - a.adjoint()).norm() > tol.rel_eq * norm) {
    throw Error(ErrorKind::NotHermitian, "input deviates from its adjoint");
  }
  if (a.rows() == 0) return {RVector(0), CMatrix(0, 0)};
  const CMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  normalise_phase(out.vectors);
  return out;
}

Index numerical_rank(const RVector& sigma, const TolerancePolicy& tol) {
  if (sigma.size() == 0) return 0;
  const double top = sigma.maxCoeff();
  if (!(top > 0.0)) return 0;
  Index r = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > tol.rank_rel * top) ++r;
  }
  return r;
}

SvdResult svd(const CMatrix& a, const TolerancePolicy& tol) {
  SvdResult out;
  if (a.size() == 0) {
    out.U = CMatrix::Identity(a.rows(), a.rows());
    out.V = CMatrix::Identity(a.cols(), a.cols());
    out.sigma = RVector(0);
    return out;
  }
  Eigen::BDCSVD<CMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "SVD did not converge");
  }
  out.U = solver.matrixU();
  out.V = solver.matrixV();
  out.sigma = solver.singularValues();
  out.rank = numerical_rank(out.sigma, tol);
  return out;
}

CMatrix pseudoinverse(const CMatrix& a, const TolerancePolicy& tol) {
  const SvdResult s = svd(a, tol);
  CMatrix out = CMatrix::Zero(a.cols(), a.rows());
  for (Index i = 0; i < s.rank; ++i) {
    out.noalias() += (1.0 / s.sigma(i)) * s.V.col(i) * s.U.col(i).adjoint();
  }
  return out;
}

CMatrix psd_power(const CMatrix& a, PsdExponent p, const TolerancePolicy& tol) {
  const EigenDecomposition e = hermitian_eig(a, tol);
  const Index n = e.values.size();
  if (n == 0) return CMatrix(0, 0);
  const double top = std::max(e.values.cwiseAbs().maxCoeff(), 0.0);
  if (e.values(0) < -tol.psd_floor * top) {
    throw Error(ErrorKind::InvalidArgument, "psd_power input is not positive semidefinite");
  }
  const bool negative = p != PsdExponent::Half;
  if (negative && !(top > 0.0 && e.values(0) > tol.rank_rel * top)) {
    throw Error(ErrorKind::SingularMatrix, "negative power of a rank-deficient matrix");
  }
  RVector powered(n);
  for (Index i = 0; i < n; ++i) {
    const double lam = std::max(e.values(i), 0.0);
    switch (p) {
      case PsdExponent::Half: powered(i) = std::sqrt(lam); break;
      case PsdExponent::MinusHalf: powered(i) = 1.0 / std::sqrt(lam); break;
      case PsdExponent::MinusOne: powered(i) = 1.0 / lam; break;
    }
  }
  CMatrix out = e.vectors * powered.asDiagonal() * e.vectors.adjoint();
  return 0.5 * (out + out.adjoint());
}

PolarDecomposition polar(const CMatrix& a, const TolerancePolicy& tol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "polar needs a square matrix");
  }
  const Index n = a.rows();
  const SvdResult s = svd(a, tol);
  const Index r = s.rank;
  CMatrix unitary = s.U.leftCols(r) * s.V.leftCols(r).adjoint();
  if (r < n) {
    // Kernel block: choose Q maximising Re tr(U_k Q V_k*), i.e. the
    // completion closest to the identity in Frobenius norm.
    const CMatrix uk = s.U.rightCols(n - r);
    const CMatrix vk = s.V.rightCols(n - r);
    const CMatrix cross = vk.adjoint() * uk;
    Eigen::JacobiSVD<CMatrix> cs(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const CMatrix q = cs.matrixV() * cs.matrixU().adjoint();
    unitary += uk * q * vk.adjoint();
  }
  CMatrix positive = s.V * s.sigma.asDiagonal() * s.V.adjoint();
  positive = 0.5 * (positive + positive.adjoint());
  return {std::move(unitary), std::move(positive)};
}

namespace {
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

CVector dft(const CVector& x, int sign) {
  if (sign != 1 && sign != -1) {
    throw Error(ErrorKind::InvalidArgument, "dft sign must be +1 or -1");
  }
  const Index n = x.size();
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "dft needs L >= 1");
  auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  for (Index i = 0; i < n; ++i) {
    in[i][0] = x(i).real();
    in[i][1] = x(i).imag();
  }
  fftw_execute(plan);
  CVector result(n);
  for (Index i = 0; i < n; ++i) result(i) = Complex(out[i][0], out[i][1]);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return result;
}

CMatrix orthonormal_range(const CMatrix& b, const TolerancePolicy& tol) {
  if (b.size() == 0) return CMatrix(b.rows(), 0);
  Eigen::BDCSVD<CMatrix> solver(b, Eigen::ComputeThinU);
  const Index r = numerical_rank(solver.singularValues(), tol);
  return solver.matrixU().leftCols(r);
}

CMatrix null_space(const CMatrix& a, const TolerancePolicy& tol) {
  const SvdResult s = svd(a, tol);
  return s.V.rightCols(a.cols() - s.rank);
}

bool subspace_equal(const CMatrix& b1, const CMatrix& b2, const TolerancePolicy& tol) {
  if (b1.rows() != b2.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "subspace_equal needs equal row counts");
  }
  const CMatrix q1 = orthonormal_range(b1, tol);
  const CMatrix q2 = orthonormal_range(b2, tol);
  if (q1.cols() != q2.cols()) return false;
  if (q1.cols() == 0) return true;
  auto residual = [](const CMatrix& from, const CMatrix& onto) {
    const CMatrix r = from - onto * (onto.adjoint() * from);
    return r.colwise().norm().maxCoeff();
  };
  return residual(q1, q2) <= tol.rel_eq && residual(q2, q1) <= tol.rel_eq;
}

double operator_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> solver(a);
  return solver.singularValues()(0);
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double rel, double floor) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const double scale = std::max({a.norm(), b.norm(), floor});
  return (a - b).norm() <= rel * scale;
}

Complex unit_root(std::int64_t num, std::int64_t den) {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  if (r == 0) return {1.0, 0.0};
  const double angle = 2.0 * kPi * static_cast<double>(r) / static_cast<double>(den);
  return std::polar(1.0, angle);
}

}  // namespace framelab
