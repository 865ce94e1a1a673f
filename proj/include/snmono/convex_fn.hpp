#pragma once

#include "snmono/common.hpp"
#include "snmono/ext_real.hpp"
#include "snmono/norms.hpp"
#include "snmono/sn_space.hpp"

#include <memory>
#include <variant>
#include <vector>

namespace snmono {

class LPositiveSet;
class ConvexFn;

struct NoClosedForm : Error {
  explicit NoClosedForm(const std::string& what) : Error(what) {}
};

// --- family members ---------------------------------------------------------

// 0.5 x'Qx + b'x + c with Q symmetric PSD.
struct Quadratic {
  Mat Q;
  Vec b;
  double c = 0.0;
};

struct IndicatorBox {
  Vec lo, hi;
};

// Indicator of span(basis columns).
struct IndicatorSubspace {
  Mat basis;
};

// alpha * ||x||^p with p in {1, 2}.
struct NormPower {
  double alpha = 1.0;
  int p = 1;
  NormKind base;
  int dim = 0;
};

struct SumOf {
  std::vector<ConvexFn> terms;
};

// f(x, x*) = k(x) + k*(x*) on a product space; k must have a closed-form
// conjugate.
struct SeparablePair {
  std::shared_ptr<const ConvexFn> k;
};

// Phi_A for an L-positive set A (evaluated by the fitzpatrick module).
struct FitzpatrickOf {
  std::shared_ptr<const LPositiveSet> set;
};

// --- the family --------------------------------------------------------------

class ConvexFn {
 public:
  using Family =
      std::variant<Quadratic, IndicatorBox, IndicatorSubspace, NormPower, SumOf, SeparablePair, FitzpatrickOf>;

  ConvexFn(int dim, Family fam) : dim_(dim), fam_(std::move(fam)) {}

  int dim() const { return dim_; }
  const Family& family() const { return fam_; }

  static ConvexFn quadratic(Mat Q, Vec b, double c = 0.0);
  static ConvexFn half_sq(int dim);  // 0.5 ||x||^2 (euclidean)
  static ConvexFn indicator_box(Vec lo, Vec hi);
  static ConvexFn indicator_point(const Vec& p);
  static ConvexFn indicator_subspace(Mat basis);
  static ConvexFn norm_power(int dim, double alpha, int p, NormKind base = NormKind::ell1());
  static ConvexFn abs_value(double alpha = 1.0);  // alpha|x| on R
  static ConvexFn sum(std::vector<ConvexFn> terms);
  static ConvexFn separable_pair(ConvexFn k);
  static ConvexFn fitzpatrick_of(std::shared_ptr<const LPositiveSet> set);

 private:
  int dim_;
  Family fam_;
};

// --- operations ---------------------------------------------------------------

ExtReal evaluate(const ConvexFn& f, const Vec& x);

// Closed-form Fenchel conjugate; throws NoClosedForm where the family has
// none (sums, most Fitzpatrick reps).
ExtReal conjugate(const ConvexFn& f, const Vec& xstar);
bool has_closed_conjugate(const ConvexFn& f);

// argmin of  weight*f(d) + 0.5|d - p|^2  (euclidean metric).
Vec prox(const ConvexFn& f, const Vec& p, double weight = 1.0);

// x* in subdifferential of f at x, decided through the prox identity.
bool subdiff_contains(const ConvexFn& f, const Vec& x, const Vec& xstar, double tol = 1e-8);

// A subgradient of a scalar convex function at y (bisection on the monotone
// prox parametrization); empty when y lies outside the domain of df.
std::optional<double> subgradient_at(const ConvexFn& k, double y);

// A point of dom f.
Vec domain_point(const ConvexFn& f);

// gamma * f(alpha * .)  -- stays inside the family.
ConvexFn scale_arg(const ConvexFn& f, double alpha, double gamma);

// --- grid oracles --------------------------------------------------------------

struct GridSpec {
  Vec lo, hi;
  int points_per_dim = 33;
  int refine_levels = 4;

  static GridSpec cube(int dim, double half_width, int points = 33, int levels = 4);
  double resolution() const;  // final grid spacing after refinement
};

// max over (refined) grid of <x, x*> - f(x): a certified lower bound of
// f*(x*).
double legendre_oracle(const ConvexFn& f, const Vec& xstar, const GridSpec& grid);

struct GridFunction {
  std::vector<Vec> points;
  std::vector<double> values;
};

// max over the stored grid of <x, b*> - g(b*): a lower bound of *g(x).
double preconjugate(const GridFunction& g, const Vec& x);

// f^{(*)}(b) = f*(Lb); closed form, or the oracle when a grid is supplied.
ExtReal circled_conjugate(const SnSpace& space, const ConvexFn& f, const Vec& b);
double circled_conjugate(const SnSpace& space, const ConvexFn& f, const Vec& b, const GridSpec& grid);

}  // namespace snmono
