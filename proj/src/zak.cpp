#include "framelab/zak.hpp"

#include <algorithm>

namespace framelab {

ZakArray zak_forward(const CVector& g, Index a) {
  const Index length = g.size();
  if (a < 1 || length < 1 || length % a != 0) {
    throw Error(ErrorKind::BadDivisor, "Zak transform needs a | L");
  }
  const Index n = length / a;
  ZakArray z{a, n, CMatrix(a, n)};
  CVector residue(n);
  for (Index r = 0; r < a; ++r) {
    for (Index k = 0; k < n; ++k) residue(k) = g(r + k * a);
    z.values.row(r) = dft(residue, +1).transpose();
  }
  return z;
}

CVector zak_inverse(const ZakArray& z, Index length) {
  if (z.a < 1 || z.N < 1 || z.values.rows() != z.a || z.values.cols() != z.N || z.length() != length) {
    throw Error(ErrorKind::ShapeMismatch, "Zak array does not match signal length");
  }
  CVector g(length);
  const double inv = 1.0 / static_cast<double>(z.N);
  for (Index r = 0; r < z.a; ++r) {
    const CVector slice = dft(z.values.row(r).transpose(), -1);
    for (Index k = 0; k < z.N; ++k) g(r + k * z.a) = inv * slice(k);
  }
  return g;
}

Complex zak_extend(const ZakArray& z, std::int64_t r, std::int64_t j) {
  const std::int64_t a = z.a;
  const std::int64_t n = z.N;
  std::int64_t period = r / a;
  std::int64_t r0 = r % a;
  if (r0 < 0) {
    r0 += a;
    --period;
  }
  std::int64_t j0 = j % n;
  if (j0 < 0) j0 += n;
  return unit_root(-period * j0, n) * z.values(r0, j0);
}

RVector critical_spectrum(const GaborSystem& sys) {
  if (!sys.is_critical()) {
    throw Error(ErrorKind::NotCriticalDensity, "critical spectrum needs a b = L");
  }
  const ZakArray z = zak_forward(sys.window(), sys.a());
  RVector out(sys.length());
  const double scale = static_cast<double>(sys.freq_slots());
  Index i = 0;
  for (Index r = 0; r < z.a; ++r) {
    for (Index j = 0; j < z.N; ++j) out(i++) = scale * std::norm(z.values(r, j));
  }
  std::sort(out.data(), out.data() + out.size());
  return out;
}

namespace {

void check_kset(const GaborSystem& sys, const std::vector<Index>& ks) {
  for (Index k : ks) {
    if (k < 0 || k >= sys.b()) throw Error(ErrorKind::InvalidArgument, "k indices must lie in [0, b)");
  }
}

}  // namespace

double walnut_partial_norm(const GaborSystem& sys, const std::vector<Index>& ks) {
  if (!sys.is_critical()) {
    throw Error(ErrorKind::NotCriticalDensity, "partial Walnut norm needs a b = L");
  }
  check_kset(sys, ks);
  const CorrelationTable table = correlation_table(sys);
  const Index n = sys.time_slots();
  double best = 0.0;
  for (Index r = 0; r < sys.a(); ++r) {
    for (Index j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (Index k : ks) acc += table.values(k, r) * unit_root(-k * j, n);
      best = std::max(best, std::abs(acc));
    }
  }
  return static_cast<double>(sys.freq_slots()) * best;
}

CVector partial_walnut_apply(const GaborSystem& sys, const std::vector<Index>& ks, const CVector& f) {
  check_kset(sys, ks);
  const CorrelationTable table = correlation_table(sys);
  const Index length = sys.length();
  if (f.size() != length) throw Error(ErrorKind::ShapeMismatch, "signal must have length L");
  CVector out = CVector::Zero(length);
  for (Index k : ks) {
    const Index shift = k * sys.freq_slots();
    for (Index t = 0; t < length; ++t) {
      out(t) += f((t - shift + length) % length) * table.values(k, t % sys.a());
    }
  }
  return static_cast<double>(sys.freq_slots()) * out;
}

}  // namespace framelab
