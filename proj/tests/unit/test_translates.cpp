#include <doctest.h>

#include "framelab/gabor.hpp"
#include "framelab/translates.hpp"
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

// Gram eigenvalues from the explicit translates, general solver.
RVector brute_gram(const CVector& phi, Index step) {
  const Index len = phi.size();
  const Index count = len / step;
  CMatrix t(len, count);
  for (Index n = 0; n < count; ++n) {
    for (Index x = 0; x < len; ++x) t(x, n) = phi(ts::wrap(x - n * step, len));
  }
  return ts::general_eigenvalues(t.adjoint() * t);
}

}  // namespace

TEST_SUITE("translates") {

TEST_CASE("construction") {
  CHECK_THROWS_AS(TranslateSystem(CVector::Ones(6), 4), Error);
  const TranslateSystem sys(CVector::Ones(6), 2);
  CHECK(sys.count() == 3);
  CHECK(sys.power().size() == 3);
  CHECK(sys.synthesis().cols() == 3);
}

TEST_CASE("hand cases") {
  const TranslateSystem delta(vec({1, 0, 0, 0}), 2);
  CHECK((delta.power() - RVector::Constant(2, 2.0)).norm() < 1e-12);
  const TranslateClassification c1 = classify_translates(delta);
  CHECK(c1.verdict == TranslateVerdict::Orthonormal);
  CHECK(c1.lower == doctest::Approx(1.0));
  CHECK(c1.upper == doctest::Approx(1.0));

  const double h = 1.0 / std::sqrt(2.0);
  const TranslateSystem pair(vec({h, h, 0, 0}), 2);
  CHECK((pair.power() - RVector::Constant(2, 2.0)).norm() < 1e-12);
  CHECK(classify_translates(pair).verdict == TranslateVerdict::Orthonormal);
  const CMatrix t = pair.synthesis();
  CHECK((t.adjoint() * t - CMatrix::Identity(2, 2)).norm() < 1e-12);

  const TranslateClassification zero = classify_translates(TranslateSystem(CVector::Zero(4), 2));
  CHECK(zero.verdict == TranslateVerdict::NotFrameSequence);
  CHECK(std::string(to_string(zero.verdict)) == "not_frame_sequence");

  // (1, 1, 0, 0) with step 1: p vanishes at the Nyquist index.
  const TranslateClassification partial = classify_translates(TranslateSystem(vec({1, 1, 0, 0}), 1));
  CHECK(partial.verdict == TranslateVerdict::FrameSequence);
  CHECK(partial.lower == doctest::Approx(2.0));
  CHECK(partial.upper == doctest::Approx(4.0));

  const TranslateClassification riesz = classify_translates(TranslateSystem(vec({2, 1, 0, 0}), 1));
  CHECK(riesz.verdict == TranslateVerdict::ExactFrameSequence);
  CHECK(riesz.lower == doctest::Approx(1.0));
  CHECK(riesz.upper == doctest::Approx(9.0));
}

TEST_CASE("gram oracle hand cases") {
  CHECK((gram_oracle(TranslateSystem(vec({1, 0, 0, 0}), 2)) - RVector::Ones(2)).norm() < 1e-12);
  ts::Gen gen(70);
  const CVector phi = gen.vector(7);
  const RVector single = gram_oracle(TranslateSystem(phi, 7));
  REQUIRE(single.size() == 1);
  CHECK(single(0) == doctest::Approx(phi.squaredNorm()));
}

TEST_CASE("periodized power sums to L times the energy") {
  ts::Gen gen(71);
  for (Index l = 1; l <= 40; ++l) {
    for (Index b : ts::divisors_of(l)) {
      const CVector phi = gen.vector(l);
      const TranslateSystem sys(phi, b);
      CHECK(sys.power().minCoeff() >= 0.0);
      CHECK(std::abs(sys.power().sum() - double(l) * phi.squaredNorm()) <= 1e-10 * double(l) * phi.squaredNorm());
    }
  }
}

TEST_CASE("Gram spectrum equals the periodized power over the step") {
  ts::Gen gen(72);
  for (Index l = 1; l <= 64; ++l) {
    for (Index b : ts::divisors_of(l)) {
      for (int rep = 0; rep < 50; ++rep) {
        const CVector phi = gen.vector(l);
        const TranslateSystem sys(phi, b);
        const RVector want = ts::sorted(sys.power() / double(b));
        CHECK(ts::rel_dev(gram_oracle(sys), want) <= 1e-9);
        if (rep == 0) CHECK(ts::rel_dev(brute_gram(phi, b), want) <= 1e-9);
      }
    }
  }
}

TEST_CASE("verdicts are consistent with the Gram matrix") {
  ts::Gen gen(73);
  for (Index l : {8, 12, 16, 18}) {
    for (Index b : ts::divisors_of(l)) {
      const Index count = l / b;
      // Unit-norm indicator of [0, b): disjoint translates.
      const TranslateSystem box(box_window(l, b, l) / std::sqrt(double(b)), b);
      const TranslateClassification cb = classify_translates(box);
      const CMatrix tb = box.synthesis();
      CHECK(cb.verdict == TranslateVerdict::Orthonormal);
      CHECK((tb.adjoint() * tb - CMatrix::Identity(count, count)).norm() < 1e-10);

      const TranslateSystem rnd(gen.vector(l), b);
      const TranslateClassification cr = classify_translates(rnd);
      const CMatrix tr = rnd.synthesis();
      const RVector ev = ts::general_eigenvalues(tr.adjoint() * tr);
      if (cr.verdict == TranslateVerdict::ExactFrameSequence || cr.verdict == TranslateVerdict::Orthonormal) {
        CHECK(ev(0) > 1e-10 * ev(ev.size() - 1));
        CHECK(cr.lower == doctest::Approx(ev(0)).epsilon(1e-9));
      }
      CHECK(cr.upper == doctest::Approx(ev(ev.size() - 1)).epsilon(1e-9));
    }
  }
}

TEST_CASE("translating the generator leaves the power unchanged") {
  ts::Gen gen(74);
  for (int i = 0; i < 100; ++i) {
    const Index l = gen.integer(2, 48);
    const std::vector<Index> ds = ts::divisors_of(l);
    const Index b = ds[static_cast<std::size_t>(gen.integer(0, Index(ds.size()) - 1))];
    CVector phi = gen.vector(l);
    if (gen.coin()) {
      // Knock out one frequency so frame-sequence verdicts also get exercised.
      CVector hat = ts::naive_dft(phi, -1);
      hat(gen.integer(0, l - 1)) = 0.0;
      phi = ts::naive_dft(hat, 1) / double(l);
    }
    const TranslateSystem base(phi, b);
    const TranslateSystem shifted(translate(phi, gen.integer(-l, l)), b);
    CHECK((base.power() - shifted.power()).norm() <= 1e-10 * std::max(1.0, base.power().norm()));
    CHECK(classify_translates(base).verdict == classify_translates(shifted).verdict);
  }
}

}  // TEST_SUITE
