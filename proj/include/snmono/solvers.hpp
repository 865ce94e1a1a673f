#pragma once

#include "snmono/common.hpp"

#include <functional>
#include <vector>

namespace snmono {

using Objective = std::function<double(const Vec&)>;

struct MinimizeResult {
  Vec x;
  double value = 0.0;
  int iters = 0;
  bool converged = false;
  bool diverged = false;
};

// Derivative-free descent: compass directions with step halving, direction-set
// rotation on stall.  Works on the nonsmooth (ell1/ellinf) composites used
// here as long as restarts are supplied.
MinimizeResult pattern_search_min(const Objective& f, Vec x0, double step0, double tol,
                                  int max_iters, Rng& rng,
                                  double divergence_threshold = 1e12);

// Best of pattern searches started from `starts`.
MinimizeResult multistart_min(const Objective& f, const std::vector<Vec>& starts, double step0,
                              double tol, int max_iters, std::uint64_t seed,
                              double divergence_threshold = 1e12);

// Golden-section over [lo, hi]; returns the argmin.
double golden_min(const std::function<double(double)>& f, double lo, double hi, double tol);

// Bracket a 1-D minimum starting from t0 by doubling, then golden-section.
double line_min(const std::function<double(double)>& f, double t0, double initial_step,
                double tol, double bound = 1e9);

// Euclidean projection onto the probability simplex.
Vec project_simplex(const Vec& v);

// Maximize  lambda'c - 0.5*|A' lambda|^2  over the simplex (projected
// gradient).  Used for proxes and conjugates of max-of-affine functions.
Vec simplex_qp_max(const Mat& A, const Vec& c, int iters = 2000);

}  // namespace snmono
