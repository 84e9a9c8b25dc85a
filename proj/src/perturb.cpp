#include "framelab/perturb.hpp"

#include <algorithm>
#include <cmath>

#include "framelab/random.hpp"

namespace framelab {

double generalized_sup(const CMatrix& x, const CMatrix& y, const TolerancePolicy& tol) {
  if (x.cols() != y.cols()) throw Error(ErrorKind::ShapeMismatch, "generalized_sup: column counts differ");
  const SvdResult dec = svd(y, tol);
  const Index n = y.cols();
  const Index r = dec.rank;
  const double scale = std::max({operator_norm(x), r > 0 ? dec.sigma(0) : 0.0,
                                 std::numeric_limits<double>::min()});
  if (r < n) {
    const CMatrix leak = x * dec.V.rightCols(n - r);
    if (operator_norm(leak) > tol.rel_eq * scale) return kInfinity;
  }
  if (r == 0) return 0.0;
  CMatrix scaled = x * dec.V.leftCols(r);
  for (Index j = 0; j < r; ++j) scaled.col(j) /= dec.sigma(j);
  const double top = operator_norm(scaled);
  return top * top;
}

namespace {

void require_same_count(const Frame& f, const Frame& g) {
  if (f.size() != g.size() || f.dim() != g.dim()) {
    throw Error(ErrorKind::CountMismatch, "frames must share dimension and element count");
  }
}

void require_frame(const Frame& f) {
  if (!f.is_frame()) throw Error(ErrorKind::NotAFrame, "reference family is not a frame");
}

double root_or_inf(double v) { return std::isinf(v) ? kInfinity : std::sqrt(v); }

bool spans(const Frame& g) { return g.rank() == g.dim(); }

// Maximises sum_k w_k |A_k x| - mu |x| over the unit sphere, where the first
// operator carries weight +1 and the rest carry their (nonnegative) penalty.
class SphereAscent {
 public:
  struct Term {
    const CMatrix* op;
    double weight;
  };

  SphereAscent(std::vector<Term> terms, double mu) : terms_(std::move(terms)), mu_(mu) {}

  double value(const CVector& x) const {
    double v = -mu_ * x.norm();
    for (const Term& t : terms_) v += t.weight * (*t.op * x).norm();
    return v;
  }

  CVector gradient(const CVector& x) const {
    CVector g = -mu_ * x / std::max(x.norm(), 1e-300);
    for (const Term& t : terms_) {
      const CVector ax = *t.op * x;
      const double nrm = ax.norm();
      if (nrm > 1e-300) g += t.weight * (t.op->adjoint() * ax) / nrm;
    }
    return g;
  }

  double maximise(CVector x, int iterations) const {
    x.normalize();
    double current = value(x);
    double step = 1.0;
    for (int it = 0; it < iterations && step > 1e-14; ++it) {
      CVector grad = gradient(x);
      grad -= x * x.dot(grad);  // tangent component
      if (grad.norm() < 1e-15) break;
      bool moved = false;
      while (step > 1e-14) {
        CVector trial = x + step * grad;
        trial.normalize();
        const double tv = value(trial);
        if (tv > current) {
          x = std::move(trial);
          current = tv;
          step *= 2.0;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    return current;
  }

 private:
  std::vector<Term> terms_;
  double mu_;
};

// Certified sufficient condition: X*X <= (lambda |Y| + mu I)^2 with |Y| = (Y*Y)^{1/2}.
bool certify(const CMatrix& x, const CMatrix& y, double lambda, double mu, const TolerancePolicy& tol) {
  const CMatrix yy = y.adjoint() * y;
  const CMatrix root = psd_power(0.5 * (yy + yy.adjoint()), PsdExponent::Half, tol);
  const CMatrix bound = lambda * root + mu * CMatrix::Identity(root.rows(), root.cols());
  CMatrix gap = bound * bound - x.adjoint() * x;
  gap = 0.5 * (gap + gap.adjoint());
  const double scale = std::max({operator_norm(bound * bound), operator_norm(x.adjoint() * x),
                                 std::numeric_limits<double>::min()});
  return hermitian_eig(gap, tol).values(0) >= -tol.rel_eq * scale;
}

FormCheck run_form(const CMatrix& lhs, const CMatrix& first, double lambda1, const CMatrix* second,
                   double lambda2, double mu, const MixedTestOptions& opts, std::uint64_t stream,
                   const TolerancePolicy& tol) {
  FormCheck out;
  std::vector<SphereAscent::Term> terms{{&lhs, 1.0}, {&first, -lambda1}};
  if (second != nullptr && lambda2 != 0.0) terms.push_back({second, -lambda2});
  const SphereAscent ascent(terms, mu);
  const Index n = lhs.cols();
  double best = -kInfinity;
  // Seed one start at the dominant direction of the left-hand operator.
  const SvdResult dec = svd(lhs, tol);
  best = std::max(best, ascent.maximise(dec.V.col(0), opts.iterations));
  Rng rng(opts.seed, stream);
  for (int r = 0; r < opts.restarts; ++r) {
    best = std::max(best, ascent.maximise(rng.complex_vector(n), opts.iterations));
  }
  out.worst_excess = best;
  double scale = operator_norm(lhs) + lambda1 * operator_norm(first) + mu;
  if (second != nullptr) scale += lambda2 * operator_norm(*second);
  scale = std::max(scale, std::numeric_limits<double>::min());
  if (certify(lhs, first, lambda1, mu, tol)) {
    out.holds = true;
    out.certainty = Certainty::Certified;
  } else {
    out.holds = best <= tol.rel_eq * scale;
    out.certainty = Certainty::Numerical;
  }
  return out;
}

}  // namespace

double paley_wiener_lambda(const Frame& f, const Frame& g) {
  require_same_count(f, g);
  const CMatrix d = f.synthesis() - g.synthesis();
  return root_or_inf(generalized_sup(d, f.synthesis(), f.tolerance()));
}

AnalysisTest analysis_perturbation_test(const Frame& f, const Frame& g) {
  require_same_count(f, g);
  require_frame(f);
  const CMatrix dstar = (f.synthesis() - g.synthesis()).adjoint();
  const double mu_f = generalized_sup(dstar, f.synthesis().adjoint(), f.tolerance());
  const double mu_g = generalized_sup(dstar, g.synthesis().adjoint(), f.tolerance());
  return {std::max(mu_f, mu_g), spans(g)};
}

SynthesisTest synthesis_perturbation_test(const Frame& f, const Frame& g) {
  require_same_count(f, g);
  const CMatrix d = f.synthesis() - g.synthesis();
  const double via_f = generalized_sup(d, f.synthesis(), f.tolerance());
  const double via_g = generalized_sup(d, g.synthesis(), f.tolerance());
  SynthesisTest out;
  out.constant = root_or_inf(std::max(via_f, via_g));
  out.equivalent = frames_equivalent(f, g);
  if (out.equivalent) {
    // The map f_i -> g_i on span(f_i), expressed in an orthonormal basis of that span.
    const SvdResult dec = svd(f.synthesis(), f.tolerance());
    if (dec.rank > 0) {
      CMatrix map = g.synthesis() * dec.V.leftCols(dec.rank);
      for (Index j = 0; j < dec.rank; ++j) map.col(j) /= dec.sigma(j);
      const SvdResult m = svd(map, f.tolerance());
      const double lo = m.sigma(dec.rank - 1);
      if (lo > 0.0) out.condition = m.sigma(0) / lo;
    }
  }
  return out;
}

const char* to_string(MixedForm form) noexcept {
  switch (form) {
    case MixedForm::None: return "none";
    case MixedForm::AnalysisForm: return "analysis_form";
    case MixedForm::SynthesisForm: return "synthesis_form";
  }
  return "unknown";
}

const char* to_string(Certainty c) noexcept {
  return c == Certainty::Certified ? "certified" : "numerical";
}

MixedTest mixed_perturbation_test(const Frame& f, const Frame& g, double lambda1, double lambda2, double mu,
                    const MixedTestOptions& opts) {
  require_same_count(f, g);
  require_frame(f);
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0) || !(mu >= 0.0) || !std::isfinite(lambda1) ||
      !std::isfinite(lambda2) || !std::isfinite(mu)) {
    throw Error(ErrorKind::InvalidArgument, "criterion coefficients must be finite and nonnegative");
  }
  const TolerancePolicy& tol = f.tolerance();
  const double lower = hermitian_eig(f.frame_operator(), tol).values(0);
  MixedTest out;
  out.gate = std::max(lambda1 + mu / std::sqrt(lower), lambda2);
  out.gate_holds = out.gate < 1.0;
  const CMatrix d = f.synthesis() - g.synthesis();
  const CMatrix dstar = d.adjoint();
  const CMatrix fstar = f.synthesis().adjoint();
  out.analysis = run_form(dstar, fstar, lambda1, nullptr, 0.0, mu, opts, 1, tol);
  out.synthesis = run_form(d, f.synthesis(), lambda1, &g.synthesis(), lambda2, mu, opts, 2, tol);
  if (out.gate_holds && out.analysis.holds) {
    out.which = MixedForm::AnalysisForm;
  } else if (out.gate_holds && out.synthesis.holds) {
    out.which = MixedForm::SynthesisForm;
  }
  out.hypothesis_holds = out.which != MixedForm::None;
  out.g_is_frame = spans(g);
  out.conclusion_verified = !out.hypothesis_holds || out.g_is_frame;
  return out;
}

PerturbationReport perturbation_report(const Frame& f, const Frame& g, double lambda1, double lambda2,
                                       double mu, const MixedTestOptions& opts) {
  PerturbationReport out;
  out.lambda_pw = paley_wiener_lambda(f, g);
  const AnalysisTest analysis = analysis_perturbation_test(f, g);
  const SynthesisTest synthesis = synthesis_perturbation_test(f, g);
  out.analysis_constant = analysis.constant;
  out.synthesis_constant = synthesis.constant;
  out.synthesis_condition = synthesis.condition;
  out.mixed = mixed_perturbation_test(f, g, lambda1, lambda2, mu, opts);
  out.lambda1 = lambda1;
  out.lambda2 = lambda2;
  out.mu = mu;
  out.g_is_frame = analysis.g_is_frame;
  out.equivalent = synthesis.equivalent;
  return out;
}

}  // namespace framelab
