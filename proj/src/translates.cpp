#include "framelab/translates.hpp"

#include <algorithm>

#include "framelab/gabor.hpp"

namespace framelab {

TranslateSystem::TranslateSystem(CVector phi, Index step, TolerancePolicy tol)
    : phi_(std::move(phi)), step_(step), tol_(tol) {
  tol_.validate();
  const Index length = phi_.size();
  if (length < 1 || step < 1 || length % step != 0) {
    throw Error(ErrorKind::BadDivisor, "translate step must divide L");
  }
  require_finite(phi_, "generator");
  const CVector spectrum = dft(phi_, -1);
  const Index slots = length / step;
  power_ = RVector::Zero(slots);
  for (Index j = 0; j < slots; ++j) {
    for (Index k = 0; k < step; ++k) power_(j) += std::norm(spectrum((j + k * slots) % length));
  }
}

CMatrix TranslateSystem::synthesis() const {
  CMatrix out(length(), count());
  for (Index n = 0; n < count(); ++n) out.col(n) = translate(phi_, n * step_);
  return out;
}

const char* to_string(TranslateVerdict v) noexcept {
  switch (v) {
    case TranslateVerdict::Orthonormal: return "orthonormal";
    case TranslateVerdict::ExactFrameSequence: return "exact_frame_sequence";
    case TranslateVerdict::FrameSequence: return "frame_sequence";
    case TranslateVerdict::NotFrameSequence: return "not_frame_sequence";
  }
  return "unknown";
}

TranslateClassification classify_translates(const TranslateSystem& ts) {
  const RVector& p = ts.power();
  const double step = static_cast<double>(ts.step());
  const double top = p.maxCoeff();
  TranslateClassification out;
  if (!(top > 0.0)) return out;
  const double cutoff = ts.tolerance().rank_rel * top;
  double lo = top;
  bool full_support = true;
  bool orthonormal = true;
  for (Index j = 0; j < p.size(); ++j) {
    if (p(j) > cutoff) {
      lo = std::min(lo, p(j));
    } else {
      full_support = false;
    }
    if (std::abs(p(j) - step) > ts.tolerance().rel_eq * step) orthonormal = false;
  }
  out.lower = lo / step;
  out.upper = top / step;
  if (orthonormal) {
    out.verdict = TranslateVerdict::Orthonormal;
  } else if (full_support) {
    out.verdict = TranslateVerdict::ExactFrameSequence;
  } else {
    out.verdict = TranslateVerdict::FrameSequence;
  }
  return out;
}

RVector gram_oracle(const TranslateSystem& ts) {
  const CMatrix s = ts.synthesis();
  const CMatrix gram = s.adjoint() * s;
  return hermitian_eig(gram, ts.tolerance()).values;
}

}  // namespace framelab
