#pragma once

#include "snmono/common.hpp"
#include "snmono/convex_fn.hpp"
#include "snmono/sn_space.hpp"

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace snmono {

// --- set representations -----------------------------------------------------

struct FiniteCloud {
  std::vector<Vec> points;
};

struct LinearSubspaceRep {
  Mat basis;  // dim x m, columns span the subspace
};

// {(x, Mx + offset)} in a product space E x E*.
struct OperatorGraphRep {
  Mat M;
  Vec offset;
};

// Graph of the subdifferential of k in a product space.
struct SubdiffGraphRep {
  ConvexFn k;
};

enum class SeqKind { tail, head, combo };

// Truncated tail/head/combo operator graph over finite-support vectors:
// E-block carries the ell1 norm, E*-block the ellinf norm.  Elements of the
// E* block carry an implicit constant on the coordinates beyond the
// truncation (partial sums of a finite-support vector are eventually
// constant), and the ellinf norm includes that constant.
struct SequenceOperatorRep {
  SeqKind kind = SeqKind::tail;
  double lambda = 1.0;
  double mu = 0.0;
  int trunc = 200;
};

class LPositiveSet {
 public:
  using Rep = std::variant<FiniteCloud, LinearSubspaceRep, OperatorGraphRep, SubdiffGraphRep, SequenceOperatorRep>;

  LPositiveSet(SnSpace space, Rep rep);

  const SnSpace& space() const { return space_; }
  const Rep& rep() const { return rep_; }

  // Deterministic sample of set members.
  std::vector<Vec> sample(int count, std::uint64_t seed, double scale = 2.0) const;

  // Membership (exact for every representation except sampled fallbacks).
  bool contains(const Vec& b, double tol = 1e-8) const;

  bool is_sequence() const { return std::holds_alternative<SequenceOperatorRep>(rep_); }

 private:
  SnSpace space_;
  Rep rep_;
};

// Convenience builders in the euclidean product space over R^n.
LPositiveSet cloud_set(SnSpace space, std::vector<Vec> points);
LPositiveSet operator_graph_set(int n, Mat M, Vec offset = Vec());
LPositiveSet subdiff_graph_set(ConvexFn k);
LPositiveSet sequence_set(SeqKind kind, int trunc, double lambda = 1.0, double mu = 0.0);

// --- operations ----------------------------------------------------------------

struct PositivityResult {
  bool ok = true;
  std::optional<std::pair<Vec, Vec>> witness;  // pair with q_L(a - c) < -tol
  double min_q = 0.0;
};
PositivityResult is_L_positive(const LPositiveSet& A, int samples = 64, std::uint64_t seed = 1);

struct GapResult {
  double gap = 0.0;
  Vec minimizer;        // the set member achieving / approaching the gap
  bool exact = false;   // global minimum certified by linear algebra
  bool budget_exhausted = false;
};
GapResult density_gap(const LPositiveSet& A, const Vec& c, const SolverConfig& cfg = {});

struct ProbeRecord {
  Vec probe;
  double gap = 0.0;
  Vec minimizer;
  bool exact = false;
};

enum class DensityVerdict { quasidense_on_grid, refuted, no_gap_found_within_budget };

struct GapCertificate {
  DensityVerdict verdict = DensityVerdict::quasidense_on_grid;
  std::vector<ProbeRecord> probes;
  std::optional<Vec> witness;
  double refutation_bound = 0.0;  // certified lower bound at the witness
  double tol = 0.0;
};
GapCertificate certify_quasidense(const LPositiveSet& A, const std::vector<Vec>& probe_grid,
                                  const SolverConfig& cfg = {}, double tol = 1e-6);

// Smallest tested radius K with inf{r_L(a-c): a in A, |a-c| <= K} <= tol.
// Precondition: density_gap(A, c) <= tol.
double stable_radius(const LPositiveSet& A, const Vec& c, double tol, const SolverConfig& cfg = {});

struct MaximalityResult {
  bool maximal_on_candidates = true;
  std::optional<Vec> extension_witness;
};
MaximalityResult maximality_probe(const LPositiveSet& A, const std::vector<Vec>& candidates,
                                  const SolverConfig& cfg = {});

// inf over A of q_L(a - b); exact for clouds/subspaces/operator graphs.
struct InfQResult {
  double value = 0.0;  // meaningful when finite
  bool minus_infinity = false;
  bool exact = false;
};
InfQResult inf_q_over_set(const LPositiveSet& A, const Vec& b, const SolverConfig& cfg = {});

// Centered lattice probe grid (step-spaced, side length `side`).
std::vector<Vec> lattice_probe_grid(int dim, double side = 5.0, double step = 0.5);

// --- sequence-operator internals (exact finite-support arithmetic) -------------

// Partial sums from the right / left; x is the stored finite-support part.
Vec tail_apply(const Vec& x);
Vec head_apply(const Vec& x);
Vec combo_apply(double lambda, double mu, const Vec& x);
// Value of (op x)_n for n beyond the stored range.
double seq_limit_constant(SeqKind kind, double lambda, double mu, const Vec& x);

// r_L((x, op x) - (c1, c2)) with c2 carrying the limit constant c2_tail.
double seq_gap_objective(const SequenceOperatorRep& rep, const Vec& x, const Vec& c1,
                         const Vec& c2, double c2_tail);

// Minimize seq_gap_objective over x (seeded subgradient descent, structured
// starts).  Every evaluated value is >= the true infimum of nothing -- they
// are honest objective values; the minimum found is an upper bound of the
// infimum.
struct SeqGapResult {
  double best = 0.0;
  double lowest_seen = 0.0;  // min over every evaluated point
  Vec x;
};
SeqGapResult seq_gap_minimize(const SequenceOperatorRep& rep, const Vec& c1, const Vec& c2,
                              double c2_tail, const SolverConfig& cfg);

}  // namespace snmono
