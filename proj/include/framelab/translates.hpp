#pragma once

#include "framelab/numerics.hpp"

namespace framelab {

/// The translates {phi[t - n b]}, n in [0, L / b), together with the
/// periodised power p[j] = sum_{k<b} |phi_hat[j + k L/b]|^2.
class TranslateSystem {
 public:
  TranslateSystem(CVector phi, Index step, TolerancePolicy tol = {});

  Index length() const noexcept { return phi_.size(); }
  Index step() const noexcept { return step_; }
  Index count() const noexcept { return length() / step_; }
  const CVector& generator() const noexcept { return phi_; }
  const RVector& power() const noexcept { return power_; }
  const TolerancePolicy& tolerance() const noexcept { return tol_; }

  /// L x count synthesis matrix of the translates.
  CMatrix synthesis() const;

 private:
  CVector phi_;
  Index step_;
  TolerancePolicy tol_;
  RVector power_;
};

enum class TranslateVerdict { Orthonormal, ExactFrameSequence, FrameSequence, NotFrameSequence };

const char* to_string(TranslateVerdict v) noexcept;

struct TranslateClassification {
  TranslateVerdict verdict = TranslateVerdict::NotFrameSequence;
  double lower = 0.0;  // min p / b over the support of p
  double upper = 0.0;  // max p / b
};

/// Reads the verdict off p: the Gram matrix is circulant with eigenvalues p / b.
TranslateClassification classify_translates(const TranslateSystem& ts);

/// Ascending eigenvalues of the count x count Gram matrix, computed directly.
RVector gram_oracle(const TranslateSystem& ts);

}  // namespace framelab
