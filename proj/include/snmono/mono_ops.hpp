#pragma once

#include "snmono/common.hpp"
#include "snmono/convex_fn.hpp"
#include "snmono/positive_sets.hpp"

#include <utility>
#include <variant>
#include <vector>

namespace snmono {

// --- monotone multifunction reps -----------------------------------------------

struct FiniteGraphRep {
  std::vector<std::pair<Vec, Vec>> pairs;
};

struct LinearMapRep {
  Mat M;  // monotone iff M + M' is PSD
};

struct SubdiffRep {
  ConvexFn k;
};

struct SequenceRep {
  SeqKind kind = SeqKind::tail;
  double lambda = 1.0;
  double mu = 0.0;
  int trunc = 200;
};

class MonoMap {
 public:
  using Rep = std::variant<FiniteGraphRep, LinearMapRep, SubdiffRep, SequenceRep>;

  MonoMap(int n, Rep rep) : n_(n), rep_(std::move(rep)) {}

  int domain_dim() const { return n_; }
  const Rep& rep() const { return rep_; }

  static MonoMap linear(Mat M);
  static MonoMap identity(int n);
  static MonoMap subdiff(ConvexFn k);
  static MonoMap finite_graph(std::vector<std::pair<Vec, Vec>> pairs);
  static MonoMap sequence(SeqKind kind, int trunc, double lambda = 1.0, double mu = 0.0);

  // G(S) as an L-positive set in the canonical product space.
  LPositiveSet graph_set() const;

  // Deterministic graph sample.
  std::vector<std::pair<Vec, Vec>> sample_graph(int count, std::uint64_t seed,
                                                double scale = 2.0) const;

  bool graph_contains(const Vec& x, const Vec& xstar, double tol = 1e-8) const;

 private:
  int n_;
  Rep rep_;
};

std::optional<std::pair<Vec, Vec>> monotonicity_witness(const MonoMap& S, int samples = 64,
                                                        std::uint64_t seed = 1);

// --- calculus -------------------------------------------------------------------

// S + T: symbolic for linear/subdiff pairs, sampled otherwise.
MonoMap op_sum(const MonoMap& S, const MonoMap& T, const SolverConfig& cfg = {});

// (S^-1 + T^-1)^-1.
MonoMap parallel_sum(const MonoMap& S, const MonoMap& T, const SolverConfig& cfg = {});

// --- partial inf-convolutions ----------------------------------------------------

struct InfConvValue {
  ExtReal value;
  Vec attaining;  // the inner minimizer when found (xi* or xi)
  bool budget_exhausted = false;
};

// h(x, x*) = inf over xi* of f(x, x* - xi*) + g(x, xi*).
InfConvValue domain_infconv(const SnSpace& space, const ConvexFn& f, const ConvexFn& g,
                            const Vec& x, const Vec& xstar, const SolverConfig& cfg = {});

// h(x, x*) = inf over xi of f(x - xi, x*) + g(xi, x*).
InfConvValue range_infconv(const SnSpace& space, const ConvexFn& f, const ConvexFn& g,
                           const Vec& x, const Vec& xstar, const SolverConfig& cfg = {});

struct SumIdentityProbe {
  Vec y, ystar;
  bool member_direct = false;     // (y, y*) in G(S + T)
  bool coincides = false;         // h^(*)(y,y*) == q_L within tol
  bool conclusive = true;         // oracle resolution was sufficient
  double h_circ_oracle = 0.0;     // grid-oracle route
  double h_circ_minform = 0.0;    // min-formula route
  double q = 0.0;
};
struct SumIdentityReport {
  std::vector<SumIdentityProbe> probes;
  bool all_agree = true;
};
SumIdentityReport sum_identity_check(const MonoMap& S, const MonoMap& T,
                                     const std::vector<std::pair<Vec, Vec>>& probes,
                                     const SolverConfig& cfg = {}, double tol = 1e-6);

// Image of A under (x, x*) -> (x/alpha, x*/beta); stays in the family.
LPositiveSet deform(const LPositiveSet& A, double alpha, double beta);

// Gap at (w, w*) through the euclidean identity
//   r_L((s,s*)-(w,w*)) = 0.5 | (s-w) + (s*-w*) |^2,
// i.e. solvability of s + s* = w + w* on the graph.  Independent of the
// density_gap minimization path.
struct ResolventGap {
  double gap = 0.0;
  Vec s, sstar;
};
ResolventGap resolvent_gap_oracle(const MonoMap& S, const Vec& w, const Vec& wstar);

}  // namespace snmono
