#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "snmono/fitzpatrick.hpp"
#include "snmono/positive_sets.hpp"
#include "snmono/touching.hpp"

using namespace snmono;

namespace {

Vec v1(double a) {
  Vec v(1);
  v[0] = a;
  return v;
}

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

ConvexFn phi_identity() {
  return ConvexFn::fitzpatrick_of(
      std::make_shared<const LPositiveSet>(operator_graph_set(1, Mat::Identity(1, 1))));
}

}  // namespace

TEST_CASE("inner gap vanishes when f = q_L is convex (scaled Hilbert)") {
  const SnSpace s = scaled_hilbert_space(2, 0.5);
  const ConvexFn q = ConvexFn::quadratic(s.L, Vec::Zero(2), 0.0);
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const Vec c = random_vec(rng, 2);
    const InnerGap g = inner_gap(s, q, c);
    CHECK(g.exact);
    CHECK(std::abs(g.value) <= 1e-10);
    CHECK((g.minimizer - c).norm() <= 1e-8);  // d = c achieves 0
  }
}

TEST_CASE("is_touching: the identity-graph Fitzpatrick function is touching") {
  const SnSpace sp = product_space(1);
  const TouchingCertificate cert = is_touching(sp, phi_identity(), lattice_probe_grid(2, 4.0, 1.0));
  CHECK(cert.verdict == TouchingVerdict::touching_on_grid);
  for (const TouchingProbe& p : cert.probes) CHECK(p.value <= 1e-8);
}

TEST_CASE("is_touching: refuted with a certified bound for a remote point indicator") {
  // f = indicator of {(0,0)} is in PC_q; the inner infimum at c equals
  // r_L(-c) which is positive at c = (1, 0).
  const SnSpace sp = product_space(1);
  const ConvexFn f = ConvexFn::indicator_point(Vec::Zero(2));
  const TouchingCertificate cert = is_touching(sp, f, {v2(1.0, 0.0)});
  REQUIRE(cert.verdict == TouchingVerdict::refuted);
  CHECK(cert.refutation_bound == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("is_touching rejects functions below q_L") {
  const SnSpace s = scaled_hilbert_space(1, 1.0);  // q = 0.5 x^2
  const ConvexFn f = ConvexFn::quadratic(0.25 * Mat::Identity(1, 1), Vec::Zero(1), 0.0);
  CHECK_THROWS_AS(is_touching(s, f, {v1(1.0)}), Error);
}

TEST_CASE("dual domination: separable pair dominates s_L everywhere") {
  const SnSpace sp = product_space(1);
  const ConvexFn f = ConvexFn::separable_pair(ConvexFn::half_sq(1));
  Rng rng(3);
  std::vector<Vec> samples;
  for (int i = 0; i < 40; ++i) samples.push_back(random_vec(rng, 2, 1.5));
  const DualDominationCheck chk = touching_dual_check(sp, f, samples);
  CHECK(chk.consistent);
}

TEST_CASE("dual domination: refuted for half square with L = 0") {
  SnSpace zero;
  zero.dim = 2;
  zero.norm = NormKind::euclidean();
  zero.L = Mat::Zero(2, 2);
  const DualDominationCheck chk = touching_dual_check(zero, ConvexFn::half_sq(2), {v2(0.4, 0.0)});
  CHECK_FALSE(chk.consistent);
}

TEST_CASE("dual domination boundary: f = q_L on the scaled Hilbert space") {
  // f* (b*) = |b*|^2/(2 lambda) = s_L(b*): the inequality holds with equality.
  const double lambda = 0.7;
  const SnSpace s = scaled_hilbert_space(2, lambda);
  const ConvexFn q = ConvexFn::quadratic(s.L, Vec::Zero(2), 0.0);
  Rng rng(5);
  std::vector<Vec> samples;
  for (int i = 0; i < 30; ++i) samples.push_back(random_vec(rng, 2));
  const DualDominationCheck chk = touching_dual_check(s, q, samples);
  CHECK(chk.consistent);
  CHECK(std::abs(chk.worst_margin) <= 1e-7);
}

TEST_CASE("coincidence projection from (1,-1) lands at the origin") {
  const SnSpace sp = product_space(1);
  const CoincidenceTrace tr = project_to_coincidence(sp, phi_identity(), v2(1.0, -1.0), 0.1);
  REQUIRE_FALSE(tr.inner_failed);
  CHECK(tr.a.cwiseAbs().maxCoeff() <= 1e-6);
  CHECK(tr.final_residual <= 1e-6);
  CHECK(tr.dist_from_start <= tr.n_c + 3.0);
  for (std::size_t n = 0; n < tr.step_norms.size(); ++n)
    CHECK(tr.step_norms[n] <= 3.0 * std::pow(0.1, static_cast<double>(n)) + 1e-12);
}

TEST_CASE("coincidence projection is idle on coincidence points") {
  const SnSpace sp = product_space(1);
  const Vec c = v2(0.8, 0.8);  // on the identity graph
  const CoincidenceTrace tr = project_to_coincidence(sp, phi_identity(), c, 0.2);
  CHECK((tr.a - c).norm() <= 1e-8);
  CHECK(tr.final_residual <= 1e-9);
}

TEST_CASE("quadratic minoration: Lemma-style bounds relating q and f - q") {
  // For f in PC_q:  -q(a-c) <= 2(f-q)(a) + 2(f-q)(c), and the sharper
  // square-root form.
  const SnSpace s = product_space(1);
  const ConvexFn f = ConvexFn::separable_pair(ConvexFn::half_sq(1));
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Vec a = random_vec(rng, 2), c = random_vec(rng, 2);
    const double fa = evaluate(f, a).value() - q_form(s, a);
    const double fc = evaluate(f, c).value() - q_form(s, c);
    CHECK(-q_form(s, a - c) <= 2 * fa + 2 * fc + 1e-9);
    CHECK(fa >= -1e-12);
    CHECK(fc >= -1e-12);
    const double sharp = std::sqrt(std::max(0.0, fa)) + std::sqrt(std::max(0.0, fc));
    CHECK(-q_form(s, a - c) <= sharp * sharp + 1e-9);
  }
}

TEST_CASE("touching conjugate dominates q_L at grid points") {
  // h touching => h^(*) >= q_L.
  const SnSpace sp = product_space(1);
  const ConvexFn h = phi_identity();
  for (const Vec& b : lattice_probe_grid(2, 4.0, 1.0)) {
    const ExtReal hc = circled_conjugate(sp, h, b);
    CHECK(hc.dominates(q_form(sp, b), 1e-8));
  }
}
