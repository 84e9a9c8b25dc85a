#include "framelab/gabor.hpp"

#include <algorithm>
#include <cmath>

#include "framelab/random.hpp"

namespace framelab {

namespace {

Index wrap(std::int64_t t, Index length) {
  std::int64_t r = t % static_cast<std::int64_t>(length);
  return static_cast<Index>(r < 0 ? r + length : r);
}

/// twiddle[j] = exp(2 pi i j / L).
CVector twiddles(Index length) {
  CVector w(length);
  for (Index j = 0; j < length; ++j) w(j) = unit_root(j, length);
  return w;
}

void require_length(const CVector& f, Index length, const char* what) {
  if (f.size() != length) {
    throw Error(ErrorKind::ShapeMismatch, std::string(what) + " must have length L");
  }
}

}  // namespace

CVector translate(const CVector& x, std::int64_t shift) {
  const Index n = x.size();
  CVector y(n);
  for (Index t = 0; t < n; ++t) y(t) = x(wrap(t - shift, n));
  return y;
}

CVector modulate(const CVector& x, std::int64_t k) {
  const Index n = x.size();
  CVector y(n);
  for (Index t = 0; t < n; ++t) y(t) = unit_root(k * t, n) * x(t);
  return y;
}

GaborSystem::GaborSystem(CVector window, Index a, Index b) : window_(std::move(window)), a_(a), b_(b) {
  const Index length = window_.size();
  if (length < 1) throw Error(ErrorKind::InvalidArgument, "window must have L >= 1");
  if (a < 1 || b < 1 || length % a != 0 || length % b != 0) {
    throw Error(ErrorKind::BadDivisor, "lattice parameters a and b must divide L");
  }
  require_finite(window_, "window");
}

CVector GaborSystem::atom(Index m, Index n) const {
  return modulate(translate(window_, n * a_), m * b_);
}

CVector GaborSystem::adjoint_atom(Index m, Index n) const {
  return modulate(translate(window_, n * freq_slots()), m * time_slots());
}

CorrelationTable cross_correlation_table(const GaborSystem& sys, const CVector& other) {
  require_length(other, sys.length(), "second window");
  const Index length = sys.length();
  const Index a = sys.a();
  const Index b = sys.b();
  const Index m_slots = sys.freq_slots();
  const Index n_slots = sys.time_slots();
  const CVector& g = sys.window();
  CorrelationTable table{a, b, m_slots, CMatrix::Zero(b, a)};
  for (Index k = 0; k < b; ++k) {
    for (Index t = 0; t < a; ++t) {
      Complex acc = 0.0;
      for (Index n = 0; n < n_slots; ++n) {
        const std::int64_t s = t - n * a;
        acc += g(wrap(s, length)) * std::conj(other(wrap(s - k * m_slots, length)));
      }
      table.values(k, t) = acc;
    }
  }
  return table;
}

CorrelationTable correlation_table(const GaborSystem& sys) {
  return cross_correlation_table(sys, sys.window());
}

Frame atoms(const GaborSystem& sys, TolerancePolicy tol) {
  const Index n_slots = sys.time_slots();
  CMatrix f(sys.length(), sys.atom_count());
  for (Index m = 0; m < sys.freq_slots(); ++m) {
    for (Index n = 0; n < n_slots; ++n) f.col(m * n_slots + n) = sys.atom(m, n);
  }
  return Frame(std::move(f), tol);
}

CMatrix adjoint_atoms(const GaborSystem& sys) {
  CMatrix f(sys.length(), sys.a() * sys.b());
  for (Index m = 0; m < sys.a(); ++m) {
    for (Index n = 0; n < sys.b(); ++n) f.col(m * sys.b() + n) = sys.adjoint_atom(m, n);
  }
  return f;
}

CMatrix frame_operator_direct(const GaborSystem& sys) {
  if (sys.length() > kDenseLimit) {
    throw Error(ErrorKind::TooLarge, "dense frame operator is limited to L <= 512");
  }
  return atoms(sys).frame_operator();
}

CVector walnut_apply(const CorrelationTable& table, const CVector& f) {
  const Index length = table.freq_slots * table.b;
  require_length(f, length, "signal");
  const Index m_slots = table.freq_slots;
  const double scale = static_cast<double>(m_slots);
  CVector out = CVector::Zero(length);
  for (Index k = 0; k < table.b; ++k) {
    const Index shift = k * m_slots;
    for (Index t = 0; t < length; ++t) {
      const Index s = t >= shift ? t - shift : t - shift + length;
      out(t) += f(s) * table.values(k, t % table.a);
    }
  }
  return scale * out;
}

CVector walnut_apply(const GaborSystem& sys, const CVector& f) {
  return walnut_apply(correlation_table(sys), f);
}

CVector direct_apply(const GaborSystem& sys, const CVector& f) {
  const Index length = sys.length();
  require_length(f, length, "signal");
  const CVector w = twiddles(length);
  const Index b = sys.b();
  CVector out = CVector::Zero(length);
  CVector shifted(length);
  CVector product(length);
  for (Index n = 0; n < sys.time_slots(); ++n) {
    shifted = translate(sys.window(), n * sys.a());
    product = f.cwiseProduct(shifted.conjugate());
    for (Index m = 0; m < sys.freq_slots(); ++m) {
      Complex coeff = 0.0;
      for (Index t = 0; t < length; ++t) coeff += product(t) * std::conj(w((m * b * t) % length));
      for (Index t = 0; t < length; ++t) out(t) += coeff * w((m * b * t) % length) * shifted(t);
    }
  }
  return out;
}

FrameOperatorBlocks::FrameOperatorBlocks(const GaborSystem& sys, TolerancePolicy tol)
    : length_(sys.length()),
      freq_slots_(sys.freq_slots()),
      b_(sys.b()),
      tol_(tol),
      enough_atoms_(sys.atom_count() >= sys.length()) {
  const CorrelationTable table = correlation_table(sys);
  const double scale = static_cast<double>(freq_slots_);
  blocks_.reserve(static_cast<std::size_t>(freq_slots_));
  upper_ = 0.0;
  lower_ = 0.0;
  bool first = true;
  for (Index r = 0; r < freq_slots_; ++r) {
    CMatrix block(b_, b_);
    for (Index j = 0; j < b_; ++j) {
      const Index t = (r + j * freq_slots_) % sys.a();
      for (Index k = 0; k < b_; ++k) block(j, (j - k + b_) % b_) = scale * table.values(k, t);
    }
    block = 0.5 * (block + block.adjoint());
    blocks_.push_back(hermitian_eig(block, tol_));
    const RVector& lam = blocks_.back().values;
    if (first) {
      lower_ = lam(0);
      upper_ = lam(lam.size() - 1);
      first = false;
    } else {
      lower_ = std::min(lower_, lam(0));
      upper_ = std::max(upper_, lam(lam.size() - 1));
    }
  }
  upper_ = std::max(upper_, 0.0);
  lower_ = std::clamp(lower_, 0.0, upper_);
}

RVector FrameOperatorBlocks::spectrum() const {
  std::vector<double> all;
  all.reserve(static_cast<std::size_t>(length_));
  for (const auto& e : blocks_) {
    for (Index i = 0; i < e.values.size(); ++i) all.push_back(e.values(i));
  }
  std::sort(all.begin(), all.end());
  return Eigen::Map<RVector>(all.data(), static_cast<Index>(all.size()));
}

CMatrix FrameOperatorBlocks::block(Index residue) const {
  const auto& e = blocks_.at(static_cast<std::size_t>(residue));
  return e.vectors * e.values.asDiagonal() * e.vectors.adjoint();
}

CVector FrameOperatorBlocks::apply(const CVector& f) const {
  require_length(f, length_, "signal");
  CVector out(length_);
  CVector x(b_);
  for (Index r = 0; r < freq_slots_; ++r) {
    for (Index j = 0; j < b_; ++j) x(j) = f(r + j * freq_slots_);
    const auto& e = blocks_[static_cast<std::size_t>(r)];
    const CVector y = e.vectors * (e.values.asDiagonal() * (e.vectors.adjoint() * x));
    for (Index j = 0; j < b_; ++j) out(r + j * freq_slots_) = y(j);
  }
  return out;
}

CVector FrameOperatorBlocks::apply_power(const CVector& f, PsdExponent p) const {
  require_length(f, length_, "signal");
  if (p != PsdExponent::Half && !is_frame()) {
    throw Error(ErrorKind::NotAFrame, "negative power of a singular Gabor frame operator");
  }
  CVector out(length_);
  CVector x(b_);
  RVector powered(b_);
  for (Index r = 0; r < freq_slots_; ++r) {
    const auto& e = blocks_[static_cast<std::size_t>(r)];
    for (Index i = 0; i < b_; ++i) {
      const double lam = std::max(e.values(i), 0.0);
      switch (p) {
        case PsdExponent::Half: powered(i) = std::sqrt(lam); break;
        case PsdExponent::MinusHalf: powered(i) = 1.0 / std::sqrt(lam); break;
        case PsdExponent::MinusOne: powered(i) = 1.0 / lam; break;
      }
    }
    for (Index j = 0; j < b_; ++j) x(j) = f(r + j * freq_slots_);
    const CVector y = e.vectors * (powered.asDiagonal() * (e.vectors.adjoint() * x));
    for (Index j = 0; j < b_; ++j) out(r + j * freq_slots_) = y(j);
  }
  return out;
}

FrameBounds gabor_frame_bounds(const GaborSystem& sys, TolerancePolicy tol) {
  const FrameOperatorBlocks blocks(sys, tol);
  return {blocks.lower(), blocks.upper(), blocks.is_frame()};
}

WhFrameIdentity wh_frame_identity(const GaborSystem& sys, const CVector& f) {
  const Index length = sys.length();
  require_length(f, length, "signal");
  const CVector w = twiddles(length);
  WhFrameIdentity out;
  CVector product(length);
  for (Index n = 0; n < sys.time_slots(); ++n) {
    product = f.cwiseProduct(translate(sys.window(), n * sys.a()).conjugate());
    for (Index m = 0; m < sys.freq_slots(); ++m) {
      Complex coeff = 0.0;
      for (Index t = 0; t < length; ++t) coeff += product(t) * std::conj(w((m * sys.b() * t) % length));
      out.total += std::norm(coeff);
    }
  }
  const CorrelationTable table = correlation_table(sys);
  const double scale = static_cast<double>(sys.freq_slots());
  Complex cross = 0.0;
  for (Index t = 0; t < length; ++t) {
    out.main += std::norm(f(t)) * table.values(0, t % sys.a()).real();
    for (Index k = 1; k < sys.b(); ++k) {
      cross += std::conj(f(t)) * f(wrap(t - k * sys.freq_slots(), length)) * table.values(k, t % sys.a());
    }
  }
  out.main *= scale;
  out.cross = scale * cross.real();
  return out;
}

CcBounds cc_bounds(const GaborSystem& sys) {
  const CorrelationTable table = correlation_table(sys);
  const double scale = static_cast<double>(sys.freq_slots());
  CcBounds out;
  bool first = true;
  for (Index t = 0; t < table.a; ++t) {
    double off = 0.0;
    for (Index k = 1; k < table.b; ++k) off += std::abs(table.values(k, t));
    const double diag = table.values(0, t).real();
    const double row = diag + off;
    const double gersh = diag - off;
    if (first) {
      out.upper = row;
      out.lower = gersh;
      first = false;
    } else {
      out.upper = std::max(out.upper, row);
      out.lower = std::min(out.lower, gersh);
    }
  }
  out.upper *= scale;
  out.lower *= scale;
  return out;
}

namespace {

/// <g, adjoint atom (m, n)> for every (m, n), indexed m * b + n.
CVector adjoint_pairings(const GaborSystem& sys, const CVector& h) {
  CVector out(sys.a() * sys.b());
  for (Index m = 0; m < sys.a(); ++m) {
    for (Index n = 0; n < sys.b(); ++n) out(m * sys.b() + n) = sys.adjoint_atom(m, n).dot(h);
  }
  return out;
}

}  // namespace

TightClassification tight_classification(const GaborSystem& sys, TolerancePolicy tol) {
  TightClassification out;
  const FrameOperatorBlocks blocks(sys, tol);
  const double c = blocks.upper();
  out.constant = c;
  out.tight_eigen = c > 0.0 && (c - blocks.lower()) <= tol.rel_eq * c;
  out.normalized = out.tight_eigen && std::abs(c - 1.0) <= tol.rel_eq;

  const CorrelationTable table = correlation_table(sys);
  const double m_scale = static_cast<double>(sys.freq_slots());
  const double g0_scale = m_scale * table.values.row(0).cwiseAbs().maxCoeff();
  if (g0_scale > 0.0) {
    bool ok = true;
    const Complex ref = table.values(0, 0);
    for (Index t = 0; t < table.a && ok; ++t) {
      ok = m_scale * std::abs(table.values(0, t) - ref) <= tol.rel_eq * g0_scale;
    }
    for (Index k = 1; k < table.b && ok; ++k) {
      for (Index t = 0; t < table.a && ok; ++t) {
        ok = m_scale * std::abs(table.values(k, t)) <= tol.rel_eq * g0_scale;
      }
    }
    out.corr_criterion = ok;
  }

  const double energy = sys.window().squaredNorm();
  if (energy > 0.0) {
    bool ok = true;
    if (sys.length() <= kDenseLimit) {
      const CMatrix adj = adjoint_atoms(sys);
      const CMatrix gram = adj.adjoint() * adj;
      for (Index j = 0; j < gram.cols() && ok; ++j) {
        for (Index i = 0; i < gram.rows() && ok; ++i) {
          if (i != j) ok = std::abs(gram(i, j)) <= tol.rel_eq * energy;
        }
      }
    } else {
      // Gram entries are unimodular multiples of <g, adjoint atom>.
      const CVector ip = adjoint_pairings(sys, sys.window());
      for (Index i = 1; i < ip.size() && ok; ++i) ok = std::abs(ip(i)) <= tol.rel_eq * energy;
    }
    out.adjoint_orthogonal = ok;

    const CVector ip = adjoint_pairings(sys, sys.window());
    bool orth = true;
    for (Index i = 1; i < ip.size() && orth; ++i) orth = std::abs(ip(i)) <= tol.rel_eq * energy;
    const double lattice = static_cast<double>(sys.a() * sys.b()) / static_cast<double>(sys.length());
    out.norm_matches = orth && std::abs(energy - c * lattice) <= tol.rel_eq * energy;

    if (blocks.is_frame()) {
      const CVector sg = blocks.apply(sys.window());
      const Complex ratio = sys.window().dot(sg) / energy;
      out.fixed_point = ratio.real() > 0.0 &&
                        (sg - ratio * sys.window()).norm() <= tol.rel_eq * sg.norm();
    }
  }
  return out;
}

GaborSystem adjoint_system(const GaborSystem& sys) {
  return GaborSystem(sys.window(), sys.freq_slots(), sys.time_slots());
}

double adjoint_gram_lower(const GaborSystem& sys, TolerancePolicy tol) {
  const Index count = sys.a() * sys.b();
  if (count > sys.length()) return 0.0;
  const FrameOperatorBlocks adj(adjoint_system(sys), tol);
  const RVector spec = adj.spectrum();
  return std::max(0.0, spec(sys.length() - count));
}

DualityVerdict duality_verdict(const GaborSystem& sys, TolerancePolicy tol) {
  DualityVerdict out;
  out.is_frame = FrameOperatorBlocks(sys, tol).is_frame();
  if (sys.a() * sys.b() <= sys.length()) {
    const FrameOperatorBlocks adj(adjoint_system(sys), tol);
    const double gram_lower = adjoint_gram_lower(sys, tol);
    out.adjoint_is_riesz_sequence = adj.upper() > 0.0 && gram_lower > tol.rank_rel * adj.upper();
  }
  return out;
}

bool wexler_raz_check(const GaborSystem& sys, const CVector& h, TolerancePolicy tol) {
  require_length(h, sys.length(), "dual window");
  const double lattice = static_cast<double>(sys.a() * sys.b()) / static_cast<double>(sys.length());
  const double scale = h.norm() * sys.window().norm();
  const CVector ip = adjoint_pairings(sys, h);
  if (std::abs(ip(0) - lattice) > tol.rel_eq * std::max(scale, lattice)) return false;
  for (Index i = 1; i < ip.size(); ++i) {
    if (std::abs(ip(i)) > tol.rel_eq * scale) return false;
  }
  return true;
}

CVector dual_window(const GaborSystem& sys, TolerancePolicy tol) {
  const FrameOperatorBlocks blocks(sys, tol);
  if (!blocks.is_frame()) throw Error(ErrorKind::NotAFrame, "dual window needs a Gabor frame");
  return blocks.apply_power(sys.window(), PsdExponent::MinusOne);
}

CVector canonical_tight_window(const GaborSystem& sys, TolerancePolicy tol) {
  const FrameOperatorBlocks blocks(sys, tol);
  if (!blocks.is_frame()) throw Error(ErrorKind::NotAFrame, "tight window needs a Gabor frame");
  return blocks.apply_power(sys.window(), PsdExponent::MinusHalf);
}

bool same_frame_operator(const GaborSystem& g, const GaborSystem& h, TolerancePolicy tol) {
  if (g.length() != h.length() || g.a() != h.a() || g.b() != h.b()) {
    throw Error(ErrorKind::ParameterMismatch, "systems must share (L, a, b)");
  }
  const CMatrix tg = correlation_table(g).values;
  const CMatrix th = correlation_table(h).values;
  // ||S||_F = M sqrt(N) ||G||_F, so this matches a Frobenius test on S with floor 1.
  const double floor = 1.0 / (static_cast<double>(g.freq_slots()) *
                              std::sqrt(static_cast<double>(g.time_slots())));
  return approx_equal(tg, th, tol.rel_eq, floor);
}

WhEquivalence wh_equivalent(const GaborSystem& g, const GaborSystem& h, TolerancePolicy tol) {
  if (g.length() != h.length() || g.a() != h.a() || g.b() != h.b()) {
    throw Error(ErrorKind::ParameterMismatch, "systems must share (L, a, b)");
  }
  const Frame fg = atoms(g, tol);
  const Frame fh = atoms(h, tol);
  if (!fg.is_frame() || !fh.is_frame()) {
    throw Error(ErrorKind::NotAFrame, "WH equivalence is defined for frames");
  }
  WhEquivalence out;
  out.equivalent = frames_equivalent(fg, fh);
  out.adjoint_span_criterion = subspace_equal(adjoint_atoms(g), adjoint_atoms(h), tol);
  return out;
}

CVector box_window(Index length, Index a, Index b) {
  if (a < 1 || b < 1 || length % a != 0 || length % b != 0) {
    throw Error(ErrorKind::BadDivisor, "box window needs a | L and b | L");
  }
  CVector g = CVector::Zero(length);
  const double height = std::sqrt(static_cast<double>(b) / static_cast<double>(length));
  for (Index t = 0; t < a; ++t) g(t) = height;
  return g;
}

CVector periodized_gaussian(Index length, double sigma) {
  if (length < 1) throw Error(ErrorKind::InvalidArgument, "window needs L >= 1");
  if (!(sigma > 0.0)) sigma = std::sqrt(static_cast<double>(length));
  CVector g(length);
  const double half = 0.5 * static_cast<double>(length);
  for (Index t = 0; t < length; ++t) {
    double acc = 0.0;
    for (int j = -3; j <= 3; ++j) {
      const double x = (static_cast<double>(t) - half + static_cast<double>(j * length)) / sigma;
      acc += std::exp(-kPi * x * x);
    }
    g(t) = acc;
  }
  return g / g.norm();
}

CVector shift_orthogonal_pc(Index length, Index a, Index b, const std::vector<Complex>& c,
                            TolerancePolicy tol) {
  if (a < 1 || b < 1 || length % a != 0 || length % b != 0) {
    throw Error(ErrorKind::BadDivisor, "piecewise-constant window needs a | L and b | L");
  }
  const Index blocks = length / a;
  if (static_cast<Index>(c.size()) != blocks) {
    throw Error(ErrorKind::InvalidCoefficients, "need exactly L / a coefficients");
  }
  double energy = 0.0;
  for (const Complex& v : c) energy += std::norm(v);
  if (!(energy > 0.0)) throw Error(ErrorKind::InvalidCoefficients, "coefficients are all zero");
  for (Index k = 1; k < blocks; ++k) {
    Complex acc = 0.0;
    for (Index n = 0; n < blocks; ++n) acc += c[static_cast<std::size_t>(n)] * std::conj(c[static_cast<std::size_t>((n + k) % blocks)]);
    if (std::abs(acc) > tol.rel_eq * energy) {
      throw Error(ErrorKind::InvalidCoefficients, "coefficients are not orthogonal to their cyclic shifts");
    }
  }
  const double height = std::sqrt(static_cast<double>(b) / static_cast<double>(length));
  CVector g(length);
  for (Index t = 0; t < length; ++t) g(t) = height * c[static_cast<std::size_t>(t / a)];
  return g;
}

CVector random_complex_window(Index length, std::uint64_t seed) {
  Rng rng(seed, 0x77696e646f77ULL);
  CVector g = rng.complex_vector(length);
  return g / g.norm();
}

CVector window_library(WindowKind kind, Index length, Index a, Index b, const WindowParams& params,
                       TolerancePolicy tol) {
  switch (kind) {
    case WindowKind::Box: return box_window(length, a, b);
    case WindowKind::PeriodizedGaussian: return periodized_gaussian(length, params.sigma);
    case WindowKind::ShiftOrthogonalPc: return shift_orthogonal_pc(length, a, b, params.coefficients, tol);
    case WindowKind::RandomComplex: return random_complex_window(length, params.seed);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown window kind");
}

std::vector<Index> divisors(Index n) {
  std::vector<Index> out;
  for (Index d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

std::vector<ScanRow> param_scan(const CVector& window, TolerancePolicy tol) {
  std::vector<ScanRow> rows;
  const Index length = window.size();
  for (Index a : divisors(length)) {
    for (Index b : divisors(length)) {
      const GaborSystem sys(window, a, b);
      const FrameBounds fb = gabor_frame_bounds(sys, tol);
      rows.push_back({a, b, fb.is_frame, fb.lower, fb.upper, sys.redundancy()});
    }
  }
  return rows;
}

}  // namespace framelab
