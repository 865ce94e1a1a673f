#pragma once

#include "snmono/common.hpp"
#include "snmono/convex_fn.hpp"
#include "snmono/sn_space.hpp"

#include <optional>
#include <vector>

namespace snmono {

// inf over d of (f - q_L)(d) + r_L(d - c).  Nonnegative; zero for every c
// exactly when f is touching.  Euclidean norms reduce to a prox solve
// (exact); otherwise seeded multi-start descent on the convex objective.
struct InnerGap {
  double value = 0.0;
  Vec minimizer;
  bool exact = false;  // global minimum certified (prox / enumeration route)
};
InnerGap inner_gap(const SnSpace& space, const ConvexFn& f, const Vec& c,
                   const SolverConfig& cfg = {});

struct TouchingProbe {
  Vec c;
  double value = 0.0;
  Vec minimizer;
  bool exact = false;
};

enum class TouchingVerdict { touching_on_grid, refuted, inconclusive };

struct TouchingCertificate {
  TouchingVerdict verdict = TouchingVerdict::touching_on_grid;
  std::vector<TouchingProbe> probes;
  std::optional<Vec> witness;
  double refutation_bound = 0.0;  // certified lower bound at the witness
};

// Throws when f fails f >= q_L at a sampled point (not in PC_q).
TouchingCertificate is_touching(const SnSpace& space, const ConvexFn& f,
                                const std::vector<Vec>& test_points, const SolverConfig& cfg = {},
                                double tol = 1e-8);

// Dual route: touching iff f* >= s_L on B*.
struct DualDominationCheck {
  bool consistent = true;
  std::optional<Vec> witness;
  double worst_margin = 0.0;  // min over samples of f* - s_L (finite cases)
  bool certified = false;     // refutation backed by closed forms
};
DualDominationCheck touching_dual_check(const SnSpace& space, const ConvexFn& f,
                                        const std::vector<Vec>& dual_samples,
                                        const SolverConfig& cfg = {}, double tol = 1e-8);

// The inductive coincidence-projection iteration: from c, produce a with
// (h - q_L)(a) ~ 0 through inner minimizations with slack delta^{2n}.
struct CoincidenceTrace {
  Vec a;
  std::vector<double> step_norms;   // |c_{n+1} - c_n|
  std::vector<double> slacks;       // inner values achieved
  double n_c = 0.0;                 // boundedness radius from the first solve
  double final_residual = 0.0;      // (h - q_L)(a)
  double dist_from_start = 0.0;     // |a - c|
  bool inner_failed = false;
  int iterations = 0;
};
CoincidenceTrace project_to_coincidence(const SnSpace& space, const ConvexFn& h, const Vec& c,
                                        double delta, const SolverConfig& cfg = {});

}  // namespace snmono
