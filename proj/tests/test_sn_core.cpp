#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "snmono/sn_space.hpp"
#include "snmono/serialize.hpp"

using namespace snmono;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("validate: identity map is an isometry") {
  SnSpace s = scaled_hilbert_space(3, 1.0);
  CHECK(validate_sn(s).ok);
}

TEST_CASE("validate: 2*identity violates nonexpansiveness") {
  SnSpace s = scaled_hilbert_space(3, 1.0);
  s.L *= 2.0;
  const ValidationReport rep = validate_sn(s);
  CHECK_FALSE(rep.ok);
  CHECK(rep.violation == "nonexpansive");
  CHECK(rep.measured == doctest::Approx(2.0));
}

TEST_CASE("validate: block swap on the product space is an isometry") {
  CHECK(validate_sn(product_space(2)).ok);
  CHECK(validate_sn(product_space(2, NormKind::ell1())).ok);
}

TEST_CASE("validate: asymmetric L is rejected") {
  SnSpace s = product_space(1);
  s.L(0, 1) += 1e-6;
  CHECK(validate_sn(s).violation == "symmetry");
}

TEST_CASE("q on the product space is the duality pairing") {
  SnSpace s = product_space(2);
  Vec b(4);
  b << 1.0, 2.0, 3.0, -0.5;
  CHECK(q_form(s, b) == doctest::Approx(1.0 * 3.0 + 2.0 * (-0.5)).epsilon(1e-14));
  CHECK(q_form(s, Vec::Zero(4)) == 0.0);
}

TEST_CASE("q for the coordinate-swap example") {
  // L(b1,b2,b3) = lambda(b2,b1,b3), lambda = 1, b = (1,2,3):
  // r = 13.5 (closed form), q = r - 0.5|b|^2 = 6.5.
  SnSpace s = swap12_space(1.0);
  const Vec b = v3(1, 2, 3);
  CHECK(q_form(s, b) == doctest::Approx(6.5).epsilon(1e-14));
  CHECK(r_form(s, b) == doctest::Approx(13.5).epsilon(1e-14));
}

TEST_CASE("r closed forms on scaled Hilbert spaces") {
  // L = lambda I: r = 0.5(1+lambda)|b|^2; L = -lambda I: r = 0.5(1-lambda)|b|^2.
  SnSpace a = scaled_hilbert_space(2, 0.5, +1);
  const Vec b = v2(2.0, 0.0);  // |b| = 2
  CHECK(r_form(a, b) == doctest::Approx(3.0).epsilon(1e-14));

  SnSpace neg = scaled_hilbert_space(4, 1.0, -1);
  Rng rng(3);
  for (int i = 0; i < 20; ++i) CHECK(r_form(neg, random_vec(rng, 4)) == doctest::Approx(0.0));
}

TEST_CASE("swap12 closed form at random points") {
  for (double lambda : {0.25, 0.6, 1.0}) {
    SnSpace s = swap12_space(lambda);
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
      const Vec b = random_vec(rng, 3);
      const double closed =
          0.5 * (b[0] * b[0] + 2 * lambda * b[0] * b[1] + b[1] * b[1] + (1 + lambda) * b[2] * b[2]);
      CHECK(r_form(s, b) == doctest::Approx(closed).epsilon(1e-10));
    }
  }
}

TEST_CASE("form symmetry, bounds and evenness hold on random inputs") {
  for (const SnSpace& s : {product_space(2), scaled_hilbert_space(3, 0.7), swap12_space(0.9),
                           product_space(2, NormKind::ell1())}) {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
      const Vec b = random_vec(rng, s.dim), c = random_vec(rng, s.dim);
      CHECK(std::abs(b.dot(s.L * c) - c.dot(s.L * b)) <= 1e-12);
      const double r = r_form(s, b);
      const double nb = norm_value(s.norm, b);
      CHECK(r >= -1e-12);
      CHECK(r <= nb * nb + 1e-12);
      // Lipschitz-style bound |r(b) - r(c)| <= |b-c|(|b|+|c|).
      const double rc = r_form(s, c);
      const double lhs = std::abs(r - rc);
      CHECK(lhs <= norm_value(s.norm, b - c) * (nb + norm_value(s.norm, c)) + 1e-9);
      // Evenness.
      CHECK(q_form(s, -b) == doctest::Approx(q_form(s, b)).epsilon(1e-12));
      CHECK(r_form(s, -b) == doctest::Approx(r).epsilon(1e-12));
    }
  }
}

TEST_CASE("s-function: L = 0 dichotomy") {
  SnSpace s;
  s.dim = 2;
  s.norm = NormKind::euclidean();
  s.L = Mat::Zero(2, 2);
  CHECK(s_function(s, Vec::Zero(2)).verdict == SupVerdict::finite);
  CHECK(s_function(s, Vec::Zero(2)).value == doctest::Approx(0.0));
  CHECK(s_function(s, v2(0.3, 0)).verdict == SupVerdict::infinite);
}

TEST_CASE("s-function: scaled Hilbert closed form |b*|^2 / (2 lambda)") {
  for (double lambda : {0.3, 0.8, 1.0}) {
    SnSpace s = scaled_hilbert_space(3, lambda);
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
      const Vec bs = random_vec(rng, 3);
      const SupResult r = s_function(s, bs);
      REQUIRE(r.verdict == SupVerdict::finite);
      CHECK(r.value == doctest::Approx(0.5 * bs.squaredNorm() / lambda).epsilon(1e-10));
    }
  }
}

TEST_CASE("s-function equals the duality product on euclidean product spaces") {
  for (int n : {1, 2, 3, 4, 5}) {
    SnSpace s = product_space(n);
    Rng rng(100 + n);
    for (int i = 0; i < 100; ++i) {
      const Vec bs = random_vec(rng, 2 * n);
      const SupResult r = s_function(s, bs);
      REQUIRE(r.verdict == SupVerdict::finite);
      CHECK(std::abs(r.value - bs.head(n).dot(bs.tail(n))) <= 1e-6);
    }
  }
}

TEST_CASE("s-function is quadratically homogeneous where finite") {
  SnSpace s = scaled_hilbert_space(2, 0.6);
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const Vec bs = random_vec(rng, 2);
    const double lam = random_uniform(rng, 0.2, 3.0);
    const double v1 = s_function(s, Vec(lam * bs)).value;
    const double v0 = s_function(s, bs).value;
    CHECK(std::abs(v1 - lam * lam * v0) <= 1e-6 * (1.0 + std::abs(v1)));
  }
}

TEST_CASE("dual space swaps blocks and keeps the pairing form") {
  SnSpace s = product_space(1);
  const SnSpace d = dual_space(s);
  CHECK(q_form(d, v2(2.0, 3.0)) == doctest::Approx(6.0));
  CHECK(validate_sn(d).ok);
  CHECK(r_form(d, Vec::Zero(2)) == 0.0);
  CHECK_THROWS_AS(dual_space(scaled_hilbert_space(2, 1.0)), Error);
}

TEST_CASE("dual space of the ell1 product carries the dual norms") {
  const SnSpace d = dual_space(product_space(2, NormKind::ell1()));
  CHECK(d.norm.first().tag() == NormTag::ellinf);
  CHECK(d.norm.second().tag() == NormTag::ell1);
  CHECK(validate_sn(d).ok);
}

TEST_CASE("image of L reaches every dual point (finite-dim density of L(B))") {
  // For (x*, x**), the point (x**, x*) maps to it exactly.
  SnSpace s = product_space(3);
  const SnSpace d = dual_space(s);
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    const Vec target = random_vec(rng, 6);
    Vec pre(6);
    pre << target.tail(3), target.head(3);
    CHECK(r_form(d, s.L * pre - target) <= 1e-12);
  }
}

TEST_CASE("boundedness: near-minimizers of f + half-norm-squared stay close") {
  // m = inf(f + 0.5|.|^2) finite; values within m+1 have |y| <= |z| + 3.
  SnSpace s = scaled_hilbert_space(2, 1.0);
  (void)s;
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec center = random_vec(rng, 2, 2.0);
    const auto f = [&](const Vec& x) { return (x - center).squaredNorm(); };
    const auto val = [&](const Vec& x) { return f(x) + 0.5 * x.squaredNorm(); };
    // Minimize by closed form: grad = 2(x-c) + x = 0 -> x = 2c/3.
    const Vec xmin = 2.0 * center / 3.0;
    const double m = val(xmin);
    std::vector<Vec> close;
    for (int i = 0; i < 200; ++i) {
      const Vec y = xmin + random_vec(rng, 2, 0.4);
      if (val(y) <= m + 1.0) close.push_back(y);
    }
    for (const Vec& y : close)
      for (const Vec& z : close) CHECK(y.norm() <= z.norm() + 3.0);
  }
}

TEST_CASE("extended reals forbid minus infinity and NaN") {
  CHECK_THROWS_AS(ExtReal(-std::numeric_limits<double>::infinity()), Error);
  CHECK_THROWS_AS(ExtReal(std::numeric_limits<double>::quiet_NaN()), Error);
  CHECK(ExtReal::infinity().is_infinite());
  CHECK((ExtReal(1.0) + ExtReal::infinity()).is_infinite());
}

TEST_CASE("product norms must pair a norm with its dual") {
  CHECK_THROWS_AS(NormKind::product(NormKind::ell1(), NormKind::ell1()), Error);
  CHECK_THROWS_AS(NormKind::product(NormKind::euclidean(), NormKind::ell1()), Error);
  CHECK(NormKind::product(NormKind::ellinf(), NormKind::ell1()).is_product());
}

TEST_CASE("space json round-trip") {
  const SnSpace s = product_space(2, NormKind::ell1());
  const SnSpace back = space_from_json(space_to_json(s));
  CHECK(back.dim == s.dim);
  CHECK(back.norm == s.norm);
  CHECK((back.L - s.L).cwiseAbs().maxCoeff() == 0.0);
}
