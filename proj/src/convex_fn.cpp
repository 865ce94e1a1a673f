#include "snmono/convex_fn.hpp"

#include "snmono/fitzpatrick.hpp"
#include "snmono/linalg.hpp"
#include "snmono/positive_sets.hpp"
#include "snmono/solvers.hpp"

#include <algorithm>
#include <cmath>

namespace snmono {

namespace {

constexpr double kBoxSlack = 1e-12;
constexpr double kInfSentinel = 1e300;

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

// Euclidean projection onto the ell1 ball of given radius.
Vec project_l1_ball(const Vec& v, double radius) {
  if (v.lpNorm<1>() <= radius) return v;
  const int n = static_cast<int>(v.size());
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) u[i] = std::abs(v[i]);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cssv = 0.0, theta = 0.0;
  for (int i = 0; i < n; ++i) {
    cssv += u[i];
    const double t = (cssv - radius) / (i + 1);
    if (u[i] - t > 0) theta = t;
  }
  Vec out(n);
  for (int i = 0; i < n; ++i) out[i] = soft_threshold(v[i], theta);
  return out;
}

bool in_box(const IndicatorBox& box, const Vec& x) {
  const double slack = kBoxSlack * (1.0 + box.lo.cwiseAbs().maxCoeff() + box.hi.cwiseAbs().maxCoeff());
  for (int i = 0; i < x.size(); ++i)
    if (x[i] < box.lo[i] - slack || x[i] > box.hi[i] + slack) return false;
  return true;
}

// Consensus ADMM for the prox of a sum: every term contributes its exact
// prox, the quadratic coupling is its own block, and strong convexity gives
// linear convergence down to machine precision.
Vec prox_sum(const SumOf& sum, const Vec& p, double weight) {
  const int dim = static_cast<int>(p.size());
  const int m = static_cast<int>(sum.terms.size());
  const double rho = 1.0;
  std::vector<Vec> u(m + 1, Vec::Zero(dim));
  Vec z = p;
  std::vector<Vec> x(m + 1, p);
  for (int it = 0; it < 2000; ++it) {
    // x0 handles the quadratic coupling term.
    x[0] = (rho * (z - u[0]) + p) / (rho + 1.0);
    for (int i = 0; i < m; ++i) x[i + 1] = prox(sum.terms[i], z - u[i + 1], weight / rho);
    Vec znew = Vec::Zero(dim);
    for (int i = 0; i <= m; ++i) znew += x[i] + u[i];
    znew /= (m + 1);
    double resid = 0.0;
    for (int i = 0; i <= m; ++i) {
      u[i] += x[i] - znew;
      resid = std::max(resid, (x[i] - znew).norm());
    }
    const double shift = (znew - z).norm();
    z = znew;
    if (it > 20 && shift < 1e-15 * (1.0 + z.norm()) && resid < 1e-13 * (1.0 + z.norm())) break;
  }
  return z;
}

}  // namespace

// --- builders ------------------------------------------------------------------

ConvexFn ConvexFn::quadratic(Mat Q, Vec b, double c) {
  if (Q.rows() != Q.cols() || Q.rows() != b.size()) throw DimensionError("quadratic: shapes");
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + Q.cwiseAbs().maxCoeff()))
    throw Error("quadratic: Q must be symmetric");
  const int d = static_cast<int>(b.size());
  return ConvexFn(d, Quadratic{std::move(Q), std::move(b), c});
}

ConvexFn ConvexFn::half_sq(int dim) {
  return quadratic(Mat::Identity(dim, dim), Vec::Zero(dim), 0.0);
}

ConvexFn ConvexFn::indicator_box(Vec lo, Vec hi) {
  if (lo.size() != hi.size()) throw DimensionError("indicator_box: shapes");
  if (!lo.allFinite() || !hi.allFinite()) throw Error("indicator_box: bounds must be finite");
  for (int i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) throw Error("indicator_box: empty box");
  const int d = static_cast<int>(lo.size());
  return ConvexFn(d, IndicatorBox{std::move(lo), std::move(hi)});
}

ConvexFn ConvexFn::indicator_point(const Vec& p) { return indicator_box(p, p); }

ConvexFn ConvexFn::indicator_subspace(Mat basis) {
  const int d = static_cast<int>(basis.rows());
  return ConvexFn(d, IndicatorSubspace{std::move(basis)});
}

ConvexFn ConvexFn::norm_power(int dim, double alpha, int p, NormKind base) {
  if (alpha <= 0.0) throw Error("norm_power: alpha > 0");
  if (p != 1 && p != 2) throw Error("norm_power: p in {1,2}");
  return ConvexFn(dim, NormPower{alpha, p, base, dim});
}

ConvexFn ConvexFn::abs_value(double alpha) { return norm_power(1, alpha, 1, NormKind::ell1()); }

ConvexFn ConvexFn::sum(std::vector<ConvexFn> terms) {
  if (terms.empty()) throw Error("sum: no terms");
  const int d = terms.front().dim();
  for (const ConvexFn& t : terms)
    if (t.dim() != d) throw DimensionError("sum: dimension mismatch");
  return ConvexFn(d, SumOf{std::move(terms)});
}

ConvexFn ConvexFn::separable_pair(ConvexFn k) {
  const int d = 2 * k.dim();
  auto kp = std::make_shared<const ConvexFn>(std::move(k));
  if (!has_closed_conjugate(*kp)) throw Error("separable_pair: k needs a closed-form conjugate");
  return ConvexFn(d, SeparablePair{std::move(kp)});
}

ConvexFn ConvexFn::fitzpatrick_of(std::shared_ptr<const LPositiveSet> set) {
  if (!set) throw Error("fitzpatrick_of: null set");
  const int d = set->space().dim;
  return ConvexFn(d, FitzpatrickOf{std::move(set)});
}

// --- evaluate -------------------------------------------------------------------

ExtReal evaluate(const ConvexFn& f, const Vec& x) {
  if (x.size() != f.dim()) throw DimensionError("evaluate: dimension mismatch");
  return std::visit(
      [&](const auto& fam) -> ExtReal {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, Quadratic>) {
          return 0.5 * x.dot(fam.Q * x) + fam.b.dot(x) + fam.c;
        } else if constexpr (std::is_same_v<T, IndicatorBox>) {
          return in_box(fam, x) ? ExtReal(0.0) : ExtReal::infinity();
        } else if constexpr (std::is_same_v<T, IndicatorSubspace>) {
          const Mat B = orthonormal_span(fam.basis);
          const double resid = (x - B * (B.transpose() * x)).norm();
          return resid <= 1e-10 * (1.0 + x.norm()) ? ExtReal(0.0) : ExtReal::infinity();
        } else if constexpr (std::is_same_v<T, NormPower>) {
          const double n = norm_value(fam.base, x);
          return fam.alpha * (fam.p == 1 ? n : n * n);
        } else if constexpr (std::is_same_v<T, SumOf>) {
          ExtReal acc(0.0);
          for (const ConvexFn& t : fam.terms) acc = acc + evaluate(t, x);
          return acc;
        } else if constexpr (std::is_same_v<T, SeparablePair>) {
          const int n = fam.k->dim();
          return evaluate(*fam.k, x.head(n)) + conjugate(*fam.k, x.tail(n));
        } else {  // FitzpatrickOf
          return phi(*fam.set, x);
        }
      },
      f.family());
}

// --- conjugate ------------------------------------------------------------------

bool has_closed_conjugate(const ConvexFn& f) {
  return std::visit(
      [&](const auto& fam) -> bool {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, SumOf>) {
          return fam.terms.size() == 1 && has_closed_conjugate(fam.terms.front());
        } else if constexpr (std::is_same_v<T, SeparablePair>) {
          return true;
        } else if constexpr (std::is_same_v<T, FitzpatrickOf>) {
          return false;  // delegated; callers go through phi_conjugate
        } else {
          return true;
        }
      },
      f.family());
}

ExtReal conjugate(const ConvexFn& f, const Vec& xstar) {
  if (xstar.size() != f.dim()) throw DimensionError("conjugate: dimension mismatch");
  return std::visit(
      [&](const auto& fam) -> ExtReal {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, Quadratic>) {
          QuadSup s = quadratic_sup(fam.Q, xstar - fam.b);
          if (s.value.is_infinite()) return ExtReal::infinity();
          return s.value.value() - fam.c;
        } else if constexpr (std::is_same_v<T, IndicatorBox>) {
          double acc = 0.0;
          for (int i = 0; i < xstar.size(); ++i) acc += std::max(fam.lo[i] * xstar[i], fam.hi[i] * xstar[i]);
          return acc;
        } else if constexpr (std::is_same_v<T, IndicatorSubspace>) {
          const Mat B = orthonormal_span(fam.basis);
          const double along = (B.transpose() * xstar).norm();
          return along <= 1e-10 * (1.0 + xstar.norm()) ? ExtReal(0.0) : ExtReal::infinity();
        } else if constexpr (std::is_same_v<T, NormPower>) {
          const NormKind dual = dual_norm(fam.base);
          const double nd = norm_value(dual, xstar);
          if (fam.p == 1) return nd <= fam.alpha + 1e-12 ? ExtReal(0.0) : ExtReal::infinity();
          return nd * nd / (4.0 * fam.alpha);
        } else if constexpr (std::is_same_v<T, SumOf>) {
          if (fam.terms.size() == 1) return conjugate(fam.terms.front(), xstar);
          throw NoClosedForm("conjugate: sum-of has no closed form");
        } else if constexpr (std::is_same_v<T, SeparablePair>) {
          const int n = fam.k->dim();
          // (k + k*)* on the product splits; k** = k for this family.
          return conjugate(*fam.k, xstar.head(n)) + evaluate(*fam.k, xstar.tail(n));
        } else {  // FitzpatrickOf
          return phi_conjugate(*fam.set, xstar);
        }
      },
      f.family());
}

// --- prox -----------------------------------------------------------------------

Vec prox(const ConvexFn& f, const Vec& p, double weight) {
  if (p.size() != f.dim()) throw DimensionError("prox: dimension mismatch");
  if (weight <= 0.0) throw Error("prox: weight > 0");
  return std::visit(
      [&](const auto& fam) -> Vec {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, Quadratic>) {
          const Mat A = weight * fam.Q + Mat::Identity(f.dim(), f.dim());
          return A.ldlt().solve(p - weight * fam.b);
        } else if constexpr (std::is_same_v<T, IndicatorBox>) {
          return p.cwiseMax(fam.lo).cwiseMin(fam.hi);
        } else if constexpr (std::is_same_v<T, IndicatorSubspace>) {
          const Mat B = orthonormal_span(fam.basis);
          return B * (B.transpose() * p);
        } else if constexpr (std::is_same_v<T, NormPower>) {
          const double a = weight * fam.alpha;
          if (fam.p == 2) {
            if (fam.base.tag() == NormTag::euclidean) return p / (1.0 + 2.0 * a);
            throw NoClosedForm("prox: norm^2 with non-euclidean base");
          }
          switch (fam.base.tag()) {
            case NormTag::ell1: {
              Vec out(p.size());
              for (int i = 0; i < p.size(); ++i) out[i] = soft_threshold(p[i], a);
              return out;
            }
            case NormTag::euclidean: {
              const double n = p.norm();
              if (n <= a) return Vec::Zero(p.size());
              return (1.0 - a / n) * p;
            }
            case NormTag::ellinf:
              return p - project_l1_ball(p, a);
            default:
              throw NoClosedForm("prox: unsupported base norm");
          }
        } else if constexpr (std::is_same_v<T, SumOf>) {
          if (fam.terms.size() == 1) return prox(fam.terms.front(), p, weight);
          return prox_sum(fam, p, weight);
        } else if constexpr (std::is_same_v<T, SeparablePair>) {
          const int n = fam.k->dim();
          Vec out(p.size());
          out.head(n) = prox(*fam.k, p.head(n), weight);
          // Moreau with weight: prox_{w k*}(v) = v - w prox_{k/w}(v/w).
          const Vec v = p.tail(n);
          out.tail(n) = v - weight * prox(*fam.k, v / weight, 1.0 / weight);
          return out;
        } else {  // FitzpatrickOf
          return phi_prox(*fam.set, p, weight);
        }
      },
      f.family());
}

bool subdiff_contains(const ConvexFn& f, const Vec& x, const Vec& xstar, double tol) {
  const Vec px = prox(f, x + xstar);
  return (px - x).norm() <= tol * (1.0 + x.norm());
}

std::optional<double> subgradient_at(const ConvexFn& k, double y) {
  if (k.dim() != 1) throw DimensionError("subgradient_at: scalar functions only");
  const auto p = [&](double tau) {
    Vec t(1);
    t[0] = tau;
    return prox(k, t)[0];
  };
  double b = 1.0;
  while (b < 1e12 && (p(y - b) > y || p(y + b) < y)) b *= 2.0;
  if (b >= 1e12) return std::nullopt;
  double lo = y - b, hi = y + b;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(y)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (p(mid) < y ? lo : hi) = mid;
  }
  const double tau = 0.5 * (lo + hi);
  if (std::abs(p(tau) - y) > 1e-9 * (1.0 + std::abs(y))) return std::nullopt;
  return tau - y;
}

Vec domain_point(const ConvexFn& f) {
  return std::visit(
      [&](const auto& fam) -> Vec {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, IndicatorBox>) {
          Vec mid = 0.5 * (fam.lo + fam.hi);
          return mid;
        } else if constexpr (std::is_same_v<T, SumOf>) {
          return prox(ConvexFn(f.dim(), fam), Vec::Zero(f.dim()));
        } else if constexpr (std::is_same_v<T, SeparablePair>) {
          const int n = fam.k->dim();
          const Vec x0 = domain_point(*fam.k);
          const Vec s = prox(*fam.k, x0);
          Vec out(2 * n);
          out << s, (x0 - s);
          return out;
        } else if constexpr (std::is_same_v<T, FitzpatrickOf>) {
          return fam.set->sample(1, 7).front();
        } else {
          return Vec::Zero(f.dim());
        }
      },
      f.family());
}

ConvexFn scale_arg(const ConvexFn& f, double alpha, double gamma) {
  if (alpha <= 0.0 || gamma <= 0.0) throw Error("scale_arg: positive factors required");
  return std::visit(
      [&](const auto& fam) -> ConvexFn {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, Quadratic>) {
          return ConvexFn::quadratic(gamma * alpha * alpha * fam.Q, gamma * alpha * fam.b, gamma * fam.c);
        } else if constexpr (std::is_same_v<T, IndicatorBox>) {
          return ConvexFn::indicator_box(fam.lo / alpha, fam.hi / alpha);
        } else if constexpr (std::is_same_v<T, IndicatorSubspace>) {
          return ConvexFn::indicator_subspace(fam.basis);
        } else if constexpr (std::is_same_v<T, NormPower>) {
          const double coef = gamma * (fam.p == 1 ? alpha : alpha * alpha);
          return ConvexFn::norm_power(fam.dim, coef * fam.alpha, fam.p, fam.base);
        } else if constexpr (std::is_same_v<T, SumOf>) {
          std::vector<ConvexFn> terms;
          terms.reserve(fam.terms.size());
          for (const ConvexFn& t : fam.terms) terms.push_back(scale_arg(t, alpha, gamma));
          return ConvexFn::sum(std::move(terms));
        } else {
          throw Error("scale_arg: unsupported family");
        }
      },
      f.family());
}

// --- grid oracles ----------------------------------------------------------------

GridSpec GridSpec::cube(int dim, double half_width, int points, int levels) {
  GridSpec g;
  g.lo = Vec::Constant(dim, -half_width);
  g.hi = Vec::Constant(dim, half_width);
  g.points_per_dim = points;
  g.refine_levels = levels;
  return g;
}

double GridSpec::resolution() const {
  double h = 0.0;
  for (int i = 0; i < lo.size(); ++i) h = std::max(h, (hi[i] - lo[i]) / (points_per_dim - 1));
  for (int l = 1; l < refine_levels; ++l) h = 4.0 * h / (points_per_dim - 1);
  return h;
}

namespace {

// One scan of the box; returns best value/point of obj over the lattice.
template <typename F>
bool grid_scan(const F& obj, const Vec& lo, const Vec& hi, int points, Vec* best_x, double* best_v) {
  const int dim = static_cast<int>(lo.size());
  std::vector<int> idx(dim, 0);
  Vec x(dim);
  bool any = false;
  while (true) {
    for (int i = 0; i < dim; ++i) {
      const double t = points > 1 ? static_cast<double>(idx[i]) / (points - 1) : 0.5;
      x[i] = lo[i] + t * (hi[i] - lo[i]);
    }
    double v;
    if (obj(x, &v)) {
      if (!any || v > *best_v) {
        any = true;
        *best_v = v;
        *best_x = x;
      }
    }
    int k = 0;
    while (k < dim && ++idx[k] >= points) idx[k++] = 0;
    if (k == dim) break;
  }
  return any;
}

}  // namespace

double legendre_oracle(const ConvexFn& f, const Vec& xstar, const GridSpec& grid) {
  if (xstar.size() != f.dim()) throw DimensionError("legendre_oracle: dimension mismatch");
  if (grid.lo.size() != f.dim()) throw DimensionError("legendre_oracle: grid dimension");
  const auto obj = [&](const Vec& x, double* v) {
    const ExtReal fx = evaluate(f, x);
    if (fx.is_infinite()) return false;
    *v = x.dot(xstar) - fx.value();
    return true;
  };
  Vec lo = grid.lo, hi = grid.hi;
  Vec best_x;
  double best_v = 0.0;
  if (!grid_scan(obj, lo, hi, grid.points_per_dim, &best_x, &best_v))
    throw Error("legendre_oracle: empty effective grid");
  for (int level = 1; level < grid.refine_levels; ++level) {
    Vec spacing = (hi - lo) / (grid.points_per_dim - 1);
    lo = best_x - 2.0 * spacing;
    hi = best_x + 2.0 * spacing;
    Vec cand_x;
    double cand_v = 0.0;
    if (grid_scan(obj, lo, hi, grid.points_per_dim, &cand_x, &cand_v) && cand_v > best_v) {
      best_v = cand_v;
      best_x = cand_x;
    }
  }
  return best_v;
}

double preconjugate(const GridFunction& g, const Vec& x) {
  if (g.points.empty()) throw Error("preconjugate: empty grid");
  double best = -kInfSentinel;
  for (std::size_t i = 0; i < g.points.size(); ++i)
    best = std::max(best, x.dot(g.points[i]) - g.values[i]);
  return best;
}

ExtReal circled_conjugate(const SnSpace& space, const ConvexFn& f, const Vec& b) {
  if (b.size() != space.dim || f.dim() != space.dim)
    throw DimensionError("circled_conjugate: dimension mismatch");
  return conjugate(f, space.L * b);
}

double circled_conjugate(const SnSpace& space, const ConvexFn& f, const Vec& b, const GridSpec& grid) {
  if (b.size() != space.dim) throw DimensionError("circled_conjugate: dimension mismatch");
  return legendre_oracle(f, space.L * b, grid);
}

}  // namespace snmono
