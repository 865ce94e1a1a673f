#pragma once

#include "snmono/common.hpp"
#include "snmono/convex_fn.hpp"
#include "snmono/positive_sets.hpp"

#include <optional>
#include <vector>

namespace snmono {

// Phi_A(b)   = sup over a in A of <a, Lb> - q_L(a)
// Theta_A(b*) = sup over a in A of <a, b*> - q_L(a)
// Both reduce to one sup of (linear - q_L) over the set.
ExtReal sup_linear_minus_q(const LPositiveSet& A, const Vec& ell, const SolverConfig& cfg = {});

ExtReal phi(const LPositiveSet& A, const Vec& b, const SolverConfig& cfg = {});
ExtReal theta(const LPositiveSet& A, const Vec& bstar, const SolverConfig& cfg = {});

// Conjugate of Phi_A on B*.  Closed forms for clouds, operator graphs,
// subspaces and separable subdifferential atoms; NoClosedForm otherwise.
ExtReal phi_conjugate(const LPositiveSet& A, const Vec& bstar, const SolverConfig& cfg = {});

// prox of Phi_A (needed by the coincidence-projection iteration).
Vec phi_prox(const LPositiveSet& A, const Vec& p, double weight, const SolverConfig& cfg = {});

// --- marker functions ---------------------------------------------------------

class MarkerCandidate {
 public:
  enum class Kind { phi_conjugate_of, theta_of, fn, grid, mix };

  static MarkerCandidate phi_conjugate_of();  // g = Phi_A^*
  static MarkerCandidate theta_of();          // g = Theta_A
  static MarkerCandidate convex(ConvexFn f);
  static MarkerCandidate grid(GridFunction g);
  static MarkerCandidate mix(double w1, MarkerCandidate g1, double w2, MarkerCandidate g2);

  ExtReal operator()(const LPositiveSet& A, const Vec& bstar, const SolverConfig& cfg) const;
  Kind kind() const { return kind_; }

 private:
  MarkerCandidate() = default;
  Kind kind_ = Kind::theta_of;
  std::optional<ConvexFn> fn_;
  std::optional<GridFunction> grid_;
  struct MixNode;
  std::shared_ptr<const MixNode> mix_;
};

struct MarkerVerdict {
  bool marker_on_grid = true;
  std::optional<Vec> witness;
  std::string violated;  // "upper" (g <= Phi*) or "lower" (g >= Theta)
};
MarkerVerdict is_marker(const LPositiveSet& A, const MarkerCandidate& g,
                        const std::vector<Vec>& dual_samples, const SolverConfig& cfg = {},
                        double tol = 1e-8);

struct DensityViaMarker {
  bool consistent = true;
  std::optional<Vec> witness;
  double worst_margin = 0.0;  // min over samples of g - s_L
};
DensityViaMarker density_via_marker(const LPositiveSet& A, const MarkerCandidate& g,
                                    const std::vector<Vec>& dual_samples,
                                    const SolverConfig& cfg = {}, double tol = 1e-6);

// --- Fitzpatrick extension -----------------------------------------------------

struct ExtensionMembership {
  Vec bstar;
  ExtReal phi_conj;
  ExtReal theta_val;
  double q_dual = 0.0;
  bool member = false;
  bool routes_agree = true;  // conjugate route vs Theta route
};
ExtensionMembership extension_membership(const LPositiveSet& A, const Vec& bstar,
                                         const SolverConfig& cfg = {}, double tol = 1e-8);

}  // namespace snmono
