#include "framelab/suite.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "framelab/random.hpp"

namespace framelab {

namespace {

// Collects case results; remembers the first failure.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++cases_;
    if (!ok && failure_.empty()) failure_ = what;
  }
  CheckOutcome outcome() const { return {failure_.empty(), cases_, failure_}; }

 private:
  std::size_t cases_ = 0;
  std::string failure_;
};

std::string describe(const char* what, double value, double bound) {
  std::ostringstream os;
  os.precision(6);
  os << what << ": " << value << " > " << bound;
  return os.str();
}

Frame random_frame(Rng& rng, const TolerancePolicy& tol, Index max_d, Index extra) {
  const Index d = rng.index(1, max_d);
  const Index n = d + rng.index(0, extra);
  return Frame(rng.complex_matrix(d, n), tol);
}

Frame random_parseval(Rng& rng, const TolerancePolicy& tol, Index max_d, Index extra) {
  return canonical_tight(random_frame(rng, tol, max_d, extra));
}

struct GaborCase {
  Index length;
  Index a;
  Index b;
};

std::vector<GaborCase> gabor_corpus(Index max_length) {
  std::vector<GaborCase> out;
  for (Index l = 2; l <= max_length; ++l) {
    for (Index a : divisors(l)) {
      for (Index b : divisors(l)) out.push_back({l, a, b});
    }
  }
  return out;
}

CheckOutcome simplex_tight(const SuiteContext& ctx) {
  Tally t;
  for (Index n = 1; n <= 8; ++n) {
    const Frame fr = simplex_frame(n, ctx.tol);
    const double err = (fr.frame_operator() - CMatrix::Identity(n, n)).norm();
    t.check(err <= 0.1 * ctx.tol.rel_eq, describe("simplex |S - I|", err, 0.1 * ctx.tol.rel_eq));
  }
  return t.outcome();
}

CheckOutcome canonical_dual_reconstruction(const SuiteContext& ctx) {
  Tally t;
  Rng rng(ctx.seed, 1);
  for (int i = 0; i < 40; ++i) {
    const Frame fr = random_frame(rng, ctx.tol, 8, 8);
    const DualFrame dual = canonical_dual(fr);
    t.check(is_dual(fr, dual.vectors), "canonical dual fails F H* = I");
    const DualParametrization par = dual_parametrization(fr);
    const CMatrix c = rng.complex_matrix(fr.dim(), par.kernel.cols());
    t.check(is_dual(fr, par.dual(c)), "parametrised alternate dual fails F H* = I");
  }
  return t.outcome();
}

CheckOutcome naimark_projection(const SuiteContext& ctx) {
  Tally t;
  Rng rng(ctx.seed, 2);
  for (int i = 0; i < 30; ++i) {
    const Frame fr = random_parseval(rng, ctx.tol, 8, 10);
    const NaimarkDilation nd = naimark_dilate(fr, true);
    const CMatrix& p = nd.projection;
    const double idem = (p * p - p).norm();
    const double trace = std::abs(p.trace().real() - static_cast<double>(fr.dim()));
    t.check(idem <= ctx.tol.rel_eq, describe("|P^2 - P|", idem, ctx.tol.rel_eq));
    t.check(trace <= ctx.tol.rel_eq, describe("|tr P - d|", trace, ctx.tol.rel_eq));
  }
  return t.outcome();
}

CheckOutcome minimal_norm(const SuiteContext& ctx) {
  Tally t;
  Rng rng(ctx.seed, 3);
  for (int i = 0; i < 60; ++i) {
    const Frame fr = random_frame(rng, ctx.tol, 6, 6);
    const CVector f = rng.complex_vector(fr.dim());
    const DualFrame dual = canonical_dual(fr);
    const CMatrix kernel = null_space(fr.synthesis(), ctx.tol);
    CVector b = dual.vectors.adjoint() * f;
    if (kernel.cols() > 0) b += kernel * rng.complex_vector(kernel.cols());
    const MinimalNormCheck chk = minimal_norm_check(fr, f, b);
    const double err = std::abs(chk.lhs - chk.rhs) / std::max(1.0, chk.lhs);
    t.check(err <= 10.0 * ctx.tol.rel_eq, describe("minimal-norm identity", err, 10.0 * ctx.tol.rel_eq));
  }
  return t.outcome();
}

CheckOutcome unitary_decompositions(const SuiteContext& ctx) {
  Tally t;
  Rng rng(ctx.seed, 4);
  for (int i = 0; i < 30; ++i) {
    const Index d = rng.index(1, 10);
    const CMatrix a = rng.complex_matrix(d, d);
    const double scale = std::max(1.0, operator_norm(a));
    const ThreeUnitaryDecomposition three = three_unitary_decomposition(a, 0.25, ctx.tol);
    const TwoUnitaryDecomposition two = two_unitary_decomposition(a, ctx.tol);
    const double e3 = (three.reconstruct() - a).norm() / scale;
    const double e2 = (two.reconstruct() - a).norm() / scale;
    t.check(e3 <= ctx.tol.rel_eq, describe("three-unitary reconstruction", e3, ctx.tol.rel_eq));
    t.check(e2 <= ctx.tol.rel_eq, describe("two-unitary reconstruction", e2, ctx.tol.rel_eq));
    const CMatrix id = CMatrix::Identity(d, d);
    for (const CMatrix* u : {&three.u1, &three.u2, &three.u3, &two.u1, &two.u2}) {
      const double defect = (u->adjoint() * *u - id).norm();
      t.check(defect <= ctx.tol.rel_eq, describe("unitarity defect", defect, ctx.tol.rel_eq));
    }
  }
  return t.outcome();
}

CheckOutcome walnut_direct(const SuiteContext& ctx) {
  Tally t;
  Rng rng(ctx.seed, 5);
  for (const GaborCase& c : gabor_corpus(24)) {
    const GaborSystem sys(rng.complex_vector(c.length), c.a, c.b);
    const CVector f = rng.complex_vector(c.length);
    const CVector direct = direct_apply(sys, f);
    const double err = (walnut_apply(sys, f) - direct).norm() / std::max(1e-300, direct.norm());
    t.check(err <= ctx.tol.rel_eq, describe("Walnut vs direct", err, ctx.tol.rel_eq));
  }
  return t.outcome();
}

CheckOutcome wh_identity(const SuiteContext& ctx) {
  Tally t;
  Rng rng(ctx.seed, 6);
  for (const GaborCase& c : gabor_corpus(20)) {
    const GaborSystem sys(rng.complex_vector(c.length), c.a, c.b);
    const WhFrameIdentity id = wh_frame_identity(sys, rng.complex_vector(c.length));
    const double err = std::abs(id.total - id.main - id.cross) / std::max(1.0, id.total);
    t.check(err <= ctx.tol.rel_eq, describe("total - F1 - F2", err, ctx.tol.rel_eq));
  }
  return t.outcome();
}

CheckOutcome tight_five_way(const SuiteContext& ctx) {
  Tally t;
  Rng rng(ctx.seed, 7);
  for (const GaborCase& c : gabor_corpus(16)) {
    const GaborSystem rand(rng.complex_vector(c.length), c.a, c.b);
    t.check(tight_classification(rand, ctx.tol).consistent(), "five-way tight verdicts disagree (random)");
    if (c.a * c.b <= c.length) {
      const GaborSystem tight = rand.with_window(canonical_tight_window(rand, ctx.tol));
      const TightClassification tc = tight_classification(tight, ctx.tol);
      t.check(tc.consistent() && tc.tight_eigen, "five-way tight verdicts disagree (tight)");
    }
  }
  return t.outcome();
}

CheckOutcome zak_spectrum(const SuiteContext& ctx) {
  Tally t;
  Rng rng(ctx.seed, 8);
  for (Index l = 2; l <= 32; ++l) {
    for (Index a : divisors(l)) {
      const GaborSystem sys(rng.complex_vector(l), a, l / a);
      const RVector zak = critical_spectrum(sys);
      const RVector eig = FrameOperatorBlocks(sys, ctx.tol).spectrum();
      const double err = (zak - eig).norm() / std::max(1e-300, eig.norm());
      t.check(err <= ctx.tol.rel_eq, describe("Zak spectrum vs eigenvalues", err, ctx.tol.rel_eq));
      const CVector back = zak_inverse(zak_forward(sys.window(), a), l);
      const double rt = (back - sys.window()).norm() / sys.window().norm();
      t.check(rt <= 1e-3 * ctx.tol.rel_eq, describe("Zak round trip", rt, 1e-3 * ctx.tol.rel_eq));
    }
  }
  return t.outcome();
}

CheckOutcome ron_shen(const SuiteContext& ctx) {
  Tally t;
  Rng rng(ctx.seed, 9);
  for (const GaborCase& c : gabor_corpus(20)) {
    const GaborSystem sys(rng.complex_vector(c.length), c.a, c.b);
    const DualityVerdict v = duality_verdict(sys, ctx.tol);
    t.check(v.is_frame == v.adjoint_is_riesz_sequence, "frame verdict differs from adjoint Riesz verdict");
  }
  return t.outcome();
}

CheckOutcome wexler_raz(const SuiteContext& ctx) {
  Tally t;
  Rng rng(ctx.seed, 10);
  for (const GaborCase& c : gabor_corpus(16)) {
    if (c.a * c.b > c.length) continue;
    const GaborSystem sys(rng.complex_vector(c.length), c.a, c.b);
    const CVector h = dual_window(sys, ctx.tol);
    t.check(wexler_raz_check(sys, h, ctx.tol), "canonical dual window fails Wexler-Raz");
    const Frame fa = atoms(sys, ctx.tol);
    const Frame fh = atoms(sys.with_window(h), ctx.tol);
    t.check(is_dual(fa, fh.synthesis()), "canonical dual window atoms fail F H* = I");
    const double pairing = std::abs(sys.window().dot(h) - static_cast<double>(c.a * c.b) / c.length);
    t.check(pairing <= 0.1 * ctx.tol.rel_eq, describe("|<h, g> - ab/L|", pairing, 0.1 * ctx.tol.rel_eq));
  }
  return t.outcome();
}

CheckOutcome cc_sandwich(const SuiteContext& ctx) {
  Tally t;
  Rng rng(ctx.seed, 11);
  for (const GaborCase& c : gabor_corpus(24)) {
    const GaborSystem sys(rng.complex_vector(c.length), c.a, c.b);
    const CcBounds cc = cc_bounds(sys);
    const FrameOperatorBlocks blocks(sys, ctx.tol);
    const double slack = ctx.tol.rel_eq * std::max(1.0, blocks.upper());
    t.check(cc.upper >= blocks.upper() - slack, describe("lambda_max - B_cc", blocks.upper() - cc.upper, slack));
    if (cc.lower > 0.0) {
      t.check(cc.lower <= blocks.lower() + slack, describe("A_cc - lambda_min", cc.lower - blocks.lower(), slack));
    }
  }
  return t.outcome();
}

CheckOutcome translates_spectrum(const SuiteContext& ctx) {
  Tally t;
  Rng rng(ctx.seed, 12);
  for (Index l = 1; l <= 32; ++l) {
    for (Index b : divisors(l)) {
      const TranslateSystem ts(rng.complex_vector(l), b, ctx.tol);
      RVector expected = ts.power() / static_cast<double>(b);
      std::sort(expected.data(), expected.data() + expected.size());
      const RVector got = gram_oracle(ts);
      const double err = (got - expected).norm() / std::max(1e-300, expected.norm());
      t.check(err <= ctx.tol.rel_eq, describe("Gram spectrum vs p/b", err, ctx.tol.rel_eq));
    }
  }
  return t.outcome();
}

CheckOutcome perturbation_biconditional(const SuiteContext& ctx) {
  Tally t;
  Rng rng(ctx.seed, 13);
  for (int i = 0; i < 60; ++i) {
    const Frame f = random_frame(rng, ctx.tol, 6, 6);
    CMatrix g = f.synthesis() + 0.3 * rng.complex_matrix(f.dim(), f.size());
    if (i % 2 == 1 && f.dim() > 1) {
      // Collapse one direction so that G misses it.
      const CVector v = rng.complex_vector(f.dim()).normalized();
      g -= v * (v.adjoint() * g);
    }
    const Frame gf(g, ctx.tol);
    const AnalysisTest r = analysis_perturbation_test(f, gf);
    t.check(std::isfinite(r.constant) == r.g_is_frame, "M_63 finiteness differs from frame verdict");
    const double lam = paley_wiener_lambda(f, gf);
    if (lam < 1.0) t.check(frames_equivalent(f, gf) && r.g_is_frame, "lambda_pw < 1 without equivalence");
  }
  return t.outcome();
}

CheckOutcome projection_staircase(const SuiteContext& ctx) {
  Tally t;
  const Frame fr = staircase_frame(StaircaseKind::RepeatStaircase, 12, ctx.tol);
  const IndexSets sets = prefix_sections(fr.size());
  Rng rng(ctx.seed, 14);
  const std::vector<CVector> probes{rng.complex_vector(fr.dim()), rng.complex_vector(fr.dim())};
  const ProjectionTrace trace = finite_sections(fr, sets, probes);
  Index first_copy = 0;
  for (Index j = 1; j <= 12; ++j) {
    const double got = trace.inv_norms[static_cast<std::size_t>(first_copy)];
    const double err = std::abs(got - static_cast<double>(j)) / static_cast<double>(j);
    t.check(err <= ctx.tol.rel_eq, describe("staircase inverse norm", err, ctx.tol.rel_eq));
    first_copy += j;
  }
  for (const auto& errs : trace.strong_errors) {
    t.check(errs.back() <= ctx.tol.rel_eq, describe("final strong error", errs.back(), ctx.tol.rel_eq));
  }
  return t.outcome();
}

CheckOutcome riesz_subset(const SuiteContext& ctx) {
  Tally t;
  Rng rng(ctx.seed, 15);
  for (int i = 0; i < 30; ++i) {
    const Frame fr = random_frame(rng, ctx.tol, 6, 6);
    const std::vector<Index> idx = select_riesz_subset(fr);
    CMatrix basis(fr.dim(), static_cast<Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) basis.col(static_cast<Index>(j)) = fr.vector(idx[j]);
    t.check(static_cast<Index>(idx.size()) == fr.rank(), "Riesz subset size differs from rank");
    t.check(numerical_rank(svd(basis, ctx.tol).sigma, ctx.tol) == static_cast<Index>(idx.size()),
            "Riesz subset is dependent");
  }
  return t.outcome();
}

const std::vector<SuiteCheck> kChecks = {
    {"simplex_tight", "simplex frames are normalized tight", simplex_tight},
    {"canonical_dual", "canonical and parametrised duals reconstruct", canonical_dual_reconstruction},
    {"naimark_projection", "Naimark projection is idempotent with trace d", naimark_projection},
    {"minimal_norm", "minimal-norm identity on random representations", minimal_norm},
    {"unitary_decompositions", "three- and two-unitary decompositions reconstruct", unitary_decompositions},
    {"walnut_direct", "Walnut apply matches direct apply", walnut_direct},
    {"wh_frame_identity", "WH frame identity splits exactly", wh_identity},
    {"tight_five_way", "tight classification criteria agree", tight_five_way},
    {"zak_spectrum", "critical Zak spectrum equals frame operator spectrum", zak_spectrum},
    {"ron_shen", "frame verdict equals adjoint Riesz-sequence verdict", ron_shen},
    {"wexler_raz", "canonical dual windows satisfy Wexler-Raz", wexler_raz},
    {"cc_sandwich", "CC bounds bracket the optimal bounds", cc_sandwich},
    {"translates_spectrum", "translate Gram spectrum equals p / b", translates_spectrum},
    {"perturbation", "analysis perturbation constant is finite iff G is a frame", perturbation_biconditional},
    {"projection_staircase", "staircase section inverse norms grow as j", projection_staircase},
    {"riesz_subset", "greedy Riesz subsets are bases of the span", riesz_subset},
};

}  // namespace

const std::vector<SuiteCheck>& suite_checks() { return kChecks; }

Json run_suite(const SuiteContext& ctx, const std::vector<std::string>& only) {
  for (const std::string& name : only) {
    const bool known = std::any_of(kChecks.begin(), kChecks.end(), [&](const SuiteCheck& c) { return c.name == name; });
    if (!known) throw Error(ErrorKind::InvalidArgument, "unknown suite check '" + name + "'");
  }
  Json results = Json::array();
  std::size_t failures = 0;
  for (const SuiteCheck& check : kChecks) {
    if (!only.empty() && std::find(only.begin(), only.end(), check.name) == only.end()) continue;
    CheckOutcome oc;
    try {
      oc = check.run(ctx);
    } catch (const std::exception& e) {
      oc.passed = false;
      oc.detail = std::string("exception: ") + e.what();
    }
    if (!oc.passed) ++failures;
    results.push_back(Json{{"name", check.name}, {"passed", oc.passed}, {"cases", oc.cases}, {"detail", oc.detail}});
  }
  return Json{{"seed", ctx.seed},
              {"tolerance", Json{{"rel_eq", ctx.tol.rel_eq}, {"rank_rel", ctx.tol.rank_rel}, {"psd_floor", ctx.tol.psd_floor}}},
              {"checks", results},
              {"failures", failures},
              {"passed", failures == 0}};
}

bool suite_passed(const Json& report) { return report.value("passed", false); }

}  // namespace framelab
