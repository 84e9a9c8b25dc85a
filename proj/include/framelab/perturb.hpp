#pragma once

#include <cstdint>
#include <limits>

#include "framelab/frame.hpp"

namespace framelab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// sup_{v : Yv != 0} |Xv|^2 / |Yv|^2, or +inf when some kernel vector of Y
/// is not annihilated by X. X and Y share their column count.
double generalized_sup(const CMatrix& x, const CMatrix& y, const TolerancePolicy& tol = {});

/// Smallest lambda with |(F - G)x| <= lambda |F x| for every coefficient
/// vector x, or +inf. Throws CountMismatch.
double paley_wiener_lambda(const Frame& f, const Frame& g);

struct AnalysisTest {
  double constant = 0.0;  // smallest M with |D* h|^2 <= M min(|F* h|^2, |G* h|^2)
  bool g_is_frame = false;
};

/// Throws NotAFrame unless f is a frame, CountMismatch on differing n.
AnalysisTest analysis_perturbation_test(const Frame& f, const Frame& g);

struct SynthesisTest {
  double constant = 0.0;   // smallest M with |Dx| <= M min(|Fx|, |Gx|)
  bool equivalent = false;
  double condition = kInfinity;  // of the map f_i -> g_i on span(f_i), +inf if undefined
};

/// Throws CountMismatch.
SynthesisTest synthesis_perturbation_test(const Frame& f, const Frame& g);

enum class MixedForm { None, AnalysisForm, SynthesisForm };
enum class Certainty { Certified, Numerical };

const char* to_string(MixedForm form) noexcept;
const char* to_string(Certainty c) noexcept;

struct FormCheck {
  bool holds = false;
  Certainty certainty = Certainty::Numerical;
  /// Largest value of lhs - rhs found on the unit sphere; <= 0 when the
  /// inequality holds.
  double worst_excess = 0.0;
};

struct MixedTest {
  double gate = 0.0;  // max(lambda1 + mu / sqrt(A), lambda2)
  bool gate_holds = false;
  FormCheck analysis;
  FormCheck synthesis;
  bool hypothesis_holds = false;
  MixedForm which = MixedForm::None;
  bool g_is_frame = false;
  bool conclusion_verified = false;
};

struct MixedTestOptions {
  int restarts = 20;
  int iterations = 300;
  std::uint64_t seed = 0;
};

/// Throws NotAFrame unless f is a frame, InvalidArgument on negative
/// coefficients, CountMismatch on differing n.
MixedTest mixed_perturbation_test(const Frame& f, const Frame& g, double lambda1, double lambda2, double mu,
                    const MixedTestOptions& opts = {});

struct PerturbationReport {
  double lambda_pw = 0.0;
  double analysis_constant = 0.0;
  double synthesis_constant = 0.0;
  double synthesis_condition = kInfinity;
  MixedTest mixed;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double mu = 0.0;
  bool g_is_frame = false;
  bool equivalent = false;
};

PerturbationReport perturbation_report(const Frame& f, const Frame& g, double lambda1, double lambda2,
                                       double mu, const MixedTestOptions& opts = {});

}  // namespace framelab
