#include <doctest.h>

#include "framelab/gabor.hpp"
#include "../support.hpp"

using namespace framelab;
namespace ts = testing_support;

namespace {

CVector vec(std::initializer_list<Complex> xs) {
  CVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (Complex x : xs) v(i++) = x;
  return v;
}

CMatrix dense_s(const GaborSystem& sys) { return ts::outer_sum(ts::gabor_atoms(sys.window(), sys.a(), sys.b())); }

struct Case {
  Index length, a, b;
};

std::vector<Case> corpus(Index max_length) {
  std::vector<Case> out;
  for (Index l = 2; l <= max_length; ++l) {
    for (Index a : ts::divisors_of(l)) {
      for (Index b : ts::divisors_of(l)) out.push_back({l, a, b});
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("gabor") {

TEST_CASE("system validates divisibility") {
  try {
    GaborSystem(CVector::Ones(6), 4, 2);
    FAIL("expected BadDivisor");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadDivisor);
  }
  const GaborSystem sys(CVector::Ones(12), 3, 4);
  CHECK(sys.time_slots() == 4);
  CHECK(sys.freq_slots() == 3);
  CHECK(sys.atom_count() == 12);
  CHECK(sys.redundancy() == doctest::Approx(1.0));
  CHECK(sys.is_critical());
}

TEST_CASE("atoms hand cases") {
  const Frame onb = atoms(GaborSystem(vec({1, 0}), 1, 2));
  CHECK((onb.synthesis() - CMatrix::Identity(2, 2)).norm() == 0.0);
  const Frame flat = atoms(GaborSystem(vec({1, 1}), 1, 2));
  CHECK((flat.synthesis() - CMatrix::Ones(2, 2)).norm() == 0.0);
  // Modulation after translation: the translated all-ones vector is itself,
  // so both m = 1 atoms equal (1, -1).
  const Frame four = atoms(GaborSystem(vec({1, 1}), 1, 1));
  CMatrix want(2, 4);
  want << 1, 1, 1, 1, 1, 1, -1, -1;
  CHECK((four.synthesis() - want).norm() < 1e-14);
}

TEST_CASE("atoms match the explicit formula and the commutation phase") {
  ts::Gen gen(41);
  for (const Case& c : corpus(12)) {
    const GaborSystem sys(gen.vector(c.length), c.a, c.b);
    CHECK((atoms(sys).synthesis() - ts::gabor_atoms(sys.window(), c.a, c.b)).norm() <= 1e-12 * sys.window().norm());
    // E then T differs from T then E by exp(-2 pi i m b n a / L).
    const Index m = gen.integer(0, sys.freq_slots() - 1);
    const Index n = gen.integer(0, sys.time_slots() - 1);
    const CVector et = translate(modulate(sys.window(), m * c.b), n * c.a);
    const Complex ph = ts::phase(-double((m * c.b * n * c.a) % c.length) / double(c.length));
    CHECK((et - ph * sys.atom(m, n)).norm() <= 1e-12 * sys.window().norm());
  }
}

TEST_CASE("correlation table hand cases and oracle") {
  const CorrelationTable t1 = correlation_table(GaborSystem(vec({1, 1}), 1, 2));
  CHECK(std::abs(t1.at(0, 0) - 2.0) < 1e-14);
  CHECK(std::abs(t1.at(1, 0) - 2.0) < 1e-14);
  const CorrelationTable t2 = correlation_table(GaborSystem(vec({1, 0}), 1, 2));
  CHECK(std::abs(t2.at(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(t2.at(1, 0)) < 1e-14);

  ts::Gen gen(42);
  const CVector g = gen.vector(6);
  const CorrelationTable single = correlation_table(GaborSystem(g, 6, 2));
  for (Index t = 0; t < 6; ++t) CHECK(std::abs(single.at(0, t) - std::norm(g(t))) < 1e-12);
  for (const Case& c : corpus(16)) {
    const CVector w = gen.vector(c.length);
    const CorrelationTable tab = correlation_table(GaborSystem(w, c.a, c.b));
    CHECK((tab.values - ts::correlations(w, c.a, c.b)).norm() <= 1e-12 * std::max(1.0, tab.values.norm()));
    for (Index t = 0; t < c.a; ++t) {
      CHECK(std::abs(tab.at(0, t).imag()) < 1e-12);
      CHECK(tab.at(0, t).real() >= 0.0);
    }
  }
}

TEST_CASE("direct frame operator hand cases") {
  CHECK((frame_operator_direct(GaborSystem(vec({1, 1}), 1, 2)) - 2.0 * CMatrix::Ones(2, 2)).norm() < 1e-14);
  CHECK((frame_operator_direct(GaborSystem(vec({1, 0}), 1, 2)) - CMatrix::Identity(2, 2)).norm() < 1e-14);
  CHECK((frame_operator_direct(GaborSystem(vec({1, 1}), 1, 1)) - 4.0 * CMatrix::Identity(2, 2)).norm() < 1e-14);
  CHECK_THROWS_AS(frame_operator_direct(GaborSystem(CVector::Ones(1024), 32, 32)), Error);
}

TEST_CASE("Walnut apply hand cases") {
  const CVector out = walnut_apply(GaborSystem(vec({1, 1}), 1, 2), vec({1, 0}));
  CHECK((out - vec({2, 2})).norm() < 1e-14);
  ts::Gen gen(43);
  const GaborSystem box(box_window(12, 3, 4), 3, 4);
  const CVector f = gen.vector(12);
  CHECK((walnut_apply(box, f) - f).norm() <= 1e-12 * f.norm());
  CHECK(walnut_apply(GaborSystem(CVector::Zero(8), 2, 2), f.head(8)).norm() == 0.0);
}

TEST_CASE("Walnut and direct apply agree with the dense operator") {
  ts::Gen gen(44);
  for (const Case& c : corpus(24)) {
    const GaborSystem sys(gen.vector(c.length), c.a, c.b);
    const CVector f = gen.vector(c.length);
    const CMatrix s = dense_s(sys);
    const CVector want = s * f;
    const double scale = std::max(1e-300, Eigen::JacobiSVD<CMatrix>(s).singularValues()(0) * f.norm());
    CHECK((walnut_apply(sys, f) - want).norm() <= 1e-9 * scale);
    CHECK((direct_apply(sys, f) - want).norm() <= 1e-9 * scale);
  }
}

TEST_CASE("frame-operator blocks reproduce the dense spectrum and powers") {
  ts::Gen gen(45);
  for (const Case& c : corpus(20)) {
    const GaborSystem sys(gen.vector(c.length), c.a, c.b);
    const CMatrix s = dense_s(sys);
    const ts::RVector want = ts::general_eigenvalues(s);
    const FrameOperatorBlocks blocks(sys);
    CHECK((blocks.spectrum() - want).norm() <= 1e-9 * std::max(1.0, want.norm()));
    const CVector f = gen.vector(c.length);
    CHECK((blocks.apply(f) - s * f).norm() <= 1e-9 * std::max(1.0, (s * f).norm()));
    if (blocks.is_frame() && blocks.lower() > 1e-6 * blocks.upper()) {
      const CVector x = blocks.apply_power(f, PsdExponent::MinusOne);
      CHECK((s * x - f).norm() <= 1e-8 * f.norm());
    }
  }
}

TEST_CASE("WH frame identity hand cases") {
  const GaborSystem sys(vec({1, 1}), 1, 2);
  const WhFrameIdentity a = wh_frame_identity(sys, vec({1, 0}));
  CHECK(a.total == doctest::Approx(2.0));
  CHECK(a.main == doctest::Approx(2.0));
  CHECK(a.cross == doctest::Approx(0.0));
  const WhFrameIdentity b = wh_frame_identity(sys, vec({1, 1}));
  CHECK(b.total == doctest::Approx(8.0));
  CHECK(b.main == doctest::Approx(4.0));
  CHECK(b.cross == doctest::Approx(4.0));
  // b = 1: only k = 0, no cross terms.
  ts::Gen gen(46);
  const WhFrameIdentity c = wh_frame_identity(GaborSystem(gen.vector(6), 2, 1), gen.vector(6));
  CHECK(c.cross == 0.0);
  CHECK(c.total == doctest::Approx(c.main).epsilon(1e-12));
}

TEST_CASE("WH frame identity splits exactly against a brute-force total") {
  ts::Gen gen(47);
  for (const Case& c : corpus(20)) {
    const GaborSystem sys(gen.vector(c.length), c.a, c.b);
    const CVector f = gen.vector(c.length);
    const WhFrameIdentity id = wh_frame_identity(sys, f);
    const double brute = (ts::gabor_atoms(sys.window(), c.a, c.b).adjoint() * f).squaredNorm();
    CHECK(std::abs(id.total - brute) <= 1e-9 * std::max(1.0, brute));
    CHECK(std::abs(id.total - id.main - id.cross) <= 1e-9 * std::max(1.0, id.total));
  }
}

TEST_CASE("CC bounds hand cases and sandwich") {
  const CcBounds box = cc_bounds(GaborSystem(box_window(8, 2, 4), 2, 4));
  CHECK(box.lower == doctest::Approx(1.0));
  CHECK(box.upper == doctest::Approx(1.0));
  const CcBounds ones = cc_bounds(GaborSystem(vec({1, 1}), 1, 2));
  CHECK(ones.lower == doctest::Approx(0.0));
  CHECK(ones.upper == doctest::Approx(4.0));
  const CcBounds delta = cc_bounds(GaborSystem(vec({1, 0}), 1, 1));
  CHECK(delta.lower == doctest::Approx(2.0));
  CHECK(delta.upper == doctest::Approx(2.0));

  ts::Gen gen(48);
  for (const Case& c : corpus(20)) {
    const GaborSystem sys(gen.vector(c.length), c.a, c.b);
    const ts::RVector ev = ts::general_eigenvalues(dense_s(sys));
    const CcBounds cc = cc_bounds(sys);
    CHECK(cc.upper >= ev.maxCoeff() - 1e-9);
    if (cc.lower > 0) {
      CHECK(cc.lower <= ev.minCoeff() + 1e-9);
    }
  }
}

TEST_CASE("tight classification hand cases") {
  const TightClassification box = tight_classification(GaborSystem(box_window(8, 2, 4), 2, 4));
  CHECK(box.tight_eigen);
  CHECK(box.consistent());
  CHECK(box.normalized);
  CHECK(box.constant == doctest::Approx(1.0));

  const TightClassification four = tight_classification(GaborSystem(vec({1, 1}), 1, 1));
  CHECK(four.tight_eigen);
  CHECK(four.consistent());
  CHECK(four.constant == doctest::Approx(4.0));
  CHECK_FALSE(four.normalized);

  const TightClassification no = tight_classification(GaborSystem(vec({1, 1}), 1, 2));
  CHECK_FALSE(no.tight_eigen);
  CHECK_FALSE(no.corr_criterion);
  CHECK_FALSE(no.adjoint_orthogonal);
  CHECK_FALSE(no.norm_matches);
  CHECK_FALSE(no.fixed_point);
}

TEST_CASE("five tight criteria agree on random and constructed-tight systems") {
  ts::Gen gen(49);
  int tight_seen = 0;
  for (const Case& c : corpus(16)) {
    const GaborSystem sys(gen.vector(c.length), c.a, c.b);
    CHECK(tight_classification(sys).consistent());
    if (c.a * c.b <= c.length) {
      const GaborSystem t = sys.with_window(canonical_tight_window(sys));
      const TightClassification tc = tight_classification(t);
      CHECK(tc.consistent());
      CHECK(tc.tight_eigen);
      tight_seen += tc.tight_eigen ? 1 : 0;
    }
  }
  CHECK(tight_seen > 100);
}

TEST_CASE("adjoint system") {
  const GaborSystem sys(CVector::Ones(4), 1, 2);
  const GaborSystem adj = adjoint_system(sys);
  CHECK(adj.a() == 2);
  CHECK(adj.b() == 4);
  const GaborSystem back = adjoint_system(adj);
  CHECK(back.a() == 1);
  CHECK(back.b() == 2);
  CHECK(adj.redundancy() == doctest::Approx(1.0 / sys.redundancy()));
  const GaborSystem crit = adjoint_system(GaborSystem(CVector::Ones(6), 1, 6));
  CHECK(crit.a() == 1);
  CHECK(crit.b() == 6);
}

TEST_CASE("Ron-Shen duality verdicts") {
  const DualityVerdict box = duality_verdict(GaborSystem(box_window(8, 2, 4), 2, 4));
  CHECK(box.is_frame);
  CHECK(box.adjoint_is_riesz_sequence);
  const DualityVerdict flat = duality_verdict(GaborSystem(vec({1, 1}), 1, 2));
  CHECK_FALSE(flat.is_frame);
  CHECK_FALSE(flat.adjoint_is_riesz_sequence);
  ts::Gen gen(50);
  const DualityVerdict sparse = duality_verdict(GaborSystem(gen.vector(12), 4, 6));
  CHECK_FALSE(sparse.is_frame);

  for (const Case& c : corpus(20)) {
    const GaborSystem sys(gen.vector(c.length), c.a, c.b);
    const DualityVerdict v = duality_verdict(sys);
    CHECK(v.is_frame == v.adjoint_is_riesz_sequence);
    // Oracle: dense rank of the atoms and of the adjoint atoms.
    const CMatrix fa = ts::gabor_atoms(sys.window(), c.a, c.b);
    Eigen::JacobiSVD<CMatrix> sv(fa);
    const bool spans = fa.cols() >= c.length &&
                       sv.singularValues()(c.length - 1) > std::sqrt(1e-10) * sv.singularValues()(0);
    if (sv.singularValues().size() >= c.length &&
        std::abs(sv.singularValues()(c.length - 1) / sv.singularValues()(0) - std::sqrt(1e-10)) > 1e-6) {
      CHECK(v.is_frame == spans);
    }
  }
}

TEST_CASE("Wexler-Raz hand cases") {
  const GaborSystem sys(vec({1, 1}), 1, 1);
  CHECK(wexler_raz_check(sys, vec({0.25, 0.25})));
  CHECK_FALSE(wexler_raz_check(sys, vec({0.5, 0.5})));
  ts::Gen gen(51);
  const GaborSystem rnd(gen.vector(12), 2, 3);
  CHECK_FALSE(wexler_raz_check(rnd, rnd.window()));
  CHECK_THROWS_AS(wexler_raz_check(rnd, CVector::Ones(5)), Error);
}

TEST_CASE("Wexler-Raz agrees with frame duality") {
  ts::Gen gen(52);
  int pairs = 0;
  for (const Case& c : corpus(16)) {
    if (c.a * c.b > c.length) continue;
    const GaborSystem sys(gen.vector(c.length), c.a, c.b);
    const CVector h0 = dual_window(sys);
    CHECK(std::abs(sys.window().dot(h0) - double(c.a * c.b) / double(c.length)) <= 1e-10);
    // Perturb within the orthogonal complement of the adjoint atoms, or off it.
    const CMatrix adj = adjoint_atoms(sys);
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(adj);
    const CVector z = gen.vector(c.length);
    const CVector perp = z - adj * (cod.pseudoInverse() * z);
    const CVector h = (pairs % 2 == 0) ? CVector(h0 + perp) : CVector(h0 + 0.1 * z);
    const bool oracle = (ts::gabor_atoms(sys.window(), c.a, c.b) * ts::gabor_atoms(h, c.a, c.b).adjoint() -
                         CMatrix::Identity(c.length, c.length))
                            .norm() <= 1e-9 * std::sqrt(double(c.length));
    CHECK(wexler_raz_check(sys, h) == oracle);
    ++pairs;
  }
  CHECK(pairs >= 100);
}

TEST_CASE("dual windows") {
  const GaborSystem box(box_window(8, 2, 4), 2, 4);
  CHECK((dual_window(box) - box.window()).norm() < 1e-12);
  CHECK((dual_window(GaborSystem(vec({1, 1}), 1, 1)) - vec({0.25, 0.25})).norm() < 1e-12);
  const GaborSystem doubled(2.0 * box_window(8, 2, 4), 2, 4);
  CHECK((dual_window(doubled) - doubled.window() / 4.0).norm() < 1e-12);
  try {
    dual_window(GaborSystem(vec({1, 1}), 1, 2));
    FAIL("expected NotAFrame");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAFrame);
  }
  ts::Gen gen(53);
  const GaborSystem sys(gen.vector(12), 2, 3);
  const CMatrix s = dense_s(sys);
  const CMatrix dual_atoms = ts::gabor_atoms(dual_window(sys), 2, 3);
  CHECK((s * dual_atoms - ts::gabor_atoms(sys.window(), 2, 3)).norm() <= 1e-9 * s.norm());
}

TEST_CASE("frame operator commutes with lattice operators") {
  ts::Gen gen(54);
  for (const Case& c : corpus(12)) {
    const GaborSystem sys(gen.vector(c.length), c.a, c.b);
    const CMatrix s = dense_s(sys);
    const CVector h = gen.vector(c.length);
    const CMatrix lhs = s * ts::gabor_atoms(h, c.a, c.b);
    const CMatrix rhs = ts::gabor_atoms(s * h, c.a, c.b);
    CHECK((lhs - rhs).norm() <= 1e-9 * std::max(1.0, lhs.norm()));
    CHECK(std::abs(s.trace().real() - double(sys.atom_count()) * sys.window().squaredNorm()) <=
          1e-9 * std::max(1.0, s.trace().real()));
    const Complex scale(1.5, -0.5);
    const GaborSystem scaled(scale * sys.window(), c.a, c.b);
    CHECK((dense_s(scaled) - std::norm(scale) * s).norm() <= 1e-9 * std::max(1.0, s.norm()));
    CHECK(gabor_frame_bounds(scaled).is_frame == gabor_frame_bounds(sys).is_frame);
  }
}

TEST_CASE("same frame operator") {
  ts::Gen gen(55);
  const GaborSystem sys(gen.vector(12), 3, 2);
  CHECK(same_frame_operator(sys, sys.with_window(translate(sys.window(), 3))));
  CHECK(same_frame_operator(sys, sys.with_window(modulate(sys.window(), 2))));
  CVector bumped = sys.window();
  bumped(0) += 1.0;
  CHECK_FALSE(same_frame_operator(sys, sys.with_window(bumped)));
  try {
    same_frame_operator(sys, GaborSystem(sys.window(), 2, 3));
    FAIL("expected ParameterMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParameterMismatch);
  }
  for (const Case& c : corpus(12)) {
    const GaborSystem g(gen.vector(c.length), c.a, c.b);
    const GaborSystem h = gen.coin() ? g.with_window(translate(g.window(), c.a * gen.integer(0, 3)))
                                     : g.with_window(gen.vector(c.length));
    const CMatrix sg = dense_s(g);
    const CMatrix sh = dense_s(h);
    const bool oracle = (sg - sh).norm() <= 1e-9 * std::max({sg.norm(), sh.norm(), 1.0});
    CHECK(same_frame_operator(g, h) == oracle);
  }
}

TEST_CASE("WH equivalence criteria agree") {
  ts::Gen gen(56);
  const GaborSystem sys(gen.vector(12), 2, 3);
  CHECK(wh_equivalent(sys, sys.with_window(dual_window(sys))).equivalent);
  CHECK(wh_equivalent(sys, sys).equivalent);
  for (const Case& c : corpus(16)) {
    if (2 * c.a * c.b != c.length) continue;
    const GaborSystem g0(gen.vector(c.length), c.a, c.b);
    const GaborSystem g = g0.with_window(canonical_tight_window(g0));
    const GaborSystem h = g0.with_window(canonical_tight_window(g0.with_window(gen.vector(c.length))));
    const WhEquivalence eq = wh_equivalent(g, h);
    CHECK(eq.agree());
    const bool oracle = frames_equivalent(Frame(ts::gabor_atoms(g.window(), c.a, c.b)),
                                          Frame(ts::gabor_atoms(h.window(), c.a, c.b)));
    CHECK(eq.equivalent == oracle);
  }
}

TEST_CASE("window library") {
  CHECK((box_window(2, 1, 2) - vec({1, 0})).norm() < 1e-15);
  const CVector gauss = periodized_gaussian(16, std::sqrt(16.0));
  CHECK(gauss.norm() == doctest::Approx(1.0));
  for (Index t = 0; t < 16; ++t) {
    CHECK(gauss(t).real() > 0);
    CHECK(gauss(t).imag() == 0.0);
  }
  // Shift-orthogonal coefficients (1, 1, 1, -1)/2 are orthogonal to their cyclic shifts.
  const std::vector<Complex> c{0.5, 0.5, 0.5, -0.5};
  const CVector pc = shift_orthogonal_pc(8, 2, 4, c);
  CHECK(tight_classification(GaborSystem(pc, 2, 4)).tight_eigen);
  try {
    shift_orthogonal_pc(8, 2, 4, {1.0, 1.0, 0.0, 0.0});
    FAIL("expected InvalidCoefficients");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidCoefficients);
  }
  CHECK((random_complex_window(10, 3) - random_complex_window(10, 3)).norm() == 0.0);
  CHECK(random_complex_window(10, 3).norm() == doctest::Approx(1.0));
  for (Index l : {4, 6, 12}) {
    for (Index a : ts::divisors_of(l)) {
      const TightClassification tc = tight_classification(GaborSystem(box_window(l, a, l / a), a, l / a));
      CHECK(tc.tight_eigen);
      CHECK(tc.consistent());
    }
  }
}

TEST_CASE("parameter scan") {
  CVector delta = CVector::Zero(4);
  delta(0) = 1.0;
  const std::vector<ScanRow> rows = param_scan(delta);
  CHECK(rows.size() == 9);
  for (const ScanRow& r : rows) {
    if (r.a * r.b > 4) CHECK_FALSE(r.is_frame);
    if (r.a == 1 && r.b == 1) CHECK(r.is_frame);
  }
  for (const ScanRow& r : param_scan(box_window(12, 1, 1))) {
    (void)r;
  }
  for (const ScanRow& r : param_scan(CVector::Zero(6))) CHECK_FALSE(r.is_frame);
  ts::Gen gen(57);
  const CVector w = gen.vector(12);
  for (const ScanRow& r : param_scan(w)) {
    const ts::RVector ev = ts::general_eigenvalues(dense_s(GaborSystem(w, r.a, r.b)));
    CHECK(std::abs(r.upper - ev.maxCoeff()) <= 1e-9 * std::max(1.0, ev.maxCoeff()));
  }
}

}  // TEST_SUITE
