#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace snmono {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& what) : Error(what) {}
};

// Shared knobs for every iterative routine.  All solvers are deterministic
// functions of (inputs, seed).
struct SolverConfig {
  std::uint64_t seed = 1;
  int restarts = 8;
  int max_iters = 600;
  double tol = 1e-8;
  double divergence_threshold = 1e6;
};

using Rng = std::mt19937_64;

inline Vec random_vec(Rng& rng, int dim, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = normal(rng);
  return v;
}

inline double random_uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return u(rng);
}

}  // namespace snmono
