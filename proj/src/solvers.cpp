#include "snmono/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace snmono {

namespace {

Mat random_orthonormal(Rng& rng, int dim) {
  Mat g(dim, dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Mat> qr(g);
  return qr.householderQ();
}

}  // namespace

MinimizeResult pattern_search_min(const Objective& f, Vec x0, double step0, double tol,
                                  int max_iters, Rng& rng, double divergence_threshold) {
  const int dim = static_cast<int>(x0.size());
  MinimizeResult res;
  res.x = std::move(x0);
  res.value = f(res.x);
  if (dim == 0) {
    res.converged = true;
    return res;
  }
  Mat dirs = Mat::Identity(dim, dim);
  double step = step0;
  int stall_rotations = 0;
  for (res.iters = 0; res.iters < max_iters; ++res.iters) {
    bool improved = false;
    for (int j = 0; j < dim; ++j) {
      for (double sgn : {1.0, -1.0}) {
        Vec trial = res.x + sgn * step * dirs.col(j);
        const double v = f(trial);
        if (v < res.value - 1e-15 * (1.0 + std::abs(res.value))) {
          res.x = std::move(trial);
          res.value = v;
          improved = true;
        }
      }
    }
    if (res.x.norm() > divergence_threshold) {
      res.diverged = true;
      return res;
    }
    if (!improved) {
      step *= 0.5;
      if (step < tol) {
        // One rotated sweep before giving up; catches diagonal valleys.
        if (stall_rotations < 3) {
          ++stall_rotations;
          dirs = random_orthonormal(rng, dim);
          step = std::max(tol * 64, step0 * std::pow(0.25, stall_rotations));
        } else {
          res.converged = true;
          return res;
        }
      }
    }
  }
  res.converged = false;
  return res;
}

MinimizeResult multistart_min(const Objective& f, const std::vector<Vec>& starts, double step0,
                              double tol, int max_iters, std::uint64_t seed,
                              double divergence_threshold) {
  if (starts.empty()) throw Error("multistart_min: no starts");
  MinimizeResult best;
  bool first = true;
  std::uint64_t k = 0;
  for (const Vec& s : starts) {
    Rng rng(seed + 0x9e3779b97f4a7c15ull * ++k);
    MinimizeResult r = pattern_search_min(f, s, step0, tol, max_iters, rng, divergence_threshold);
    if (first || r.value < best.value) {
      best = std::move(r);
      first = false;
    }
  }
  return best;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 400 && (b - a) > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double line_min(const std::function<double(double)>& f, double t0, double initial_step,
                double tol, double bound) {
  double lo = t0 - initial_step, hi = t0 + initial_step;
  double flo = f(lo), fhi = f(hi), fmid = f(t0);
  double step = initial_step;
  while ((flo < fmid || fhi < fmid) && step < bound) {
    step *= 2.0;
    if (flo < fhi) {
      lo = t0 - step;
      flo = f(lo);
    } else {
      hi = t0 + step;
      fhi = f(hi);
    }
    fmid = std::min({fmid, flo, fhi});
  }
  return golden_min(f, lo, hi, tol);
}

Vec project_simplex(const Vec& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cssv = 0.0;
  double theta = 0.0;
  for (int i = 0; i < n; ++i) {
    cssv += u[i];
    const double t = (cssv - 1.0) / (i + 1);
    if (u[i] - t > 0) theta = t;
  }
  Vec out(n);
  for (int i = 0; i < n; ++i) out[i] = std::max(0.0, v[i] - theta);
  return out;
}

Vec simplex_qp_max(const Mat& A, const Vec& c, int iters) {
  const int m = static_cast<int>(A.rows());
  if (c.size() != m) throw DimensionError("simplex_qp_max: size mismatch");
  const Mat G = A * A.transpose();
  double lip = G.isZero(0) ? 1.0 : Eigen::SelfAdjointEigenSolver<Mat>(G).eigenvalues().maxCoeff();
  lip = std::max(lip, 1e-12);
  Vec lam = Vec::Constant(m, 1.0 / m);
  Vec y = lam;
  double t_prev = 1.0;
  for (int it = 0; it < iters; ++it) {
    const Vec grad = c - G * y;
    Vec lam_next = project_simplex(y + grad / lip);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_prev * t_prev));
    y = lam_next + ((t_prev - 1.0) / t_next) * (lam_next - lam);
    lam = std::move(lam_next);
    t_prev = t_next;
  }
  return lam;
}

}  // namespace snmono
