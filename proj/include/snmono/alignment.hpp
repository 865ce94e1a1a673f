#pragma once

#include "snmono/common.hpp"
#include "snmono/mono_ops.hpp"
#include "snmono/positive_sets.hpp"

#include <optional>
#include <vector>

namespace snmono {

struct AlignmentResult {
  double tau = 0.0;
  double alpha = 1.0, beta = 1.0;
  Vec s, sstar;           // witness graph point
  double dist_x = 0.0;    // |s - w|
  double dist_xstar = 0.0;
  double inner = 0.0;     // <s - w, s* - w*>
  double spread = 0.0;    // max deviation of tau across restarts
  int restarts = 0;
  bool budget_exhausted = false;
};

// The unique scaling tau with (alpha*tau, beta*tau) a negative alignment
// pair, realized by minimizing r_L over the deformed graph.
AlignmentResult alignment_tau(const MonoMap& S, const Vec& w, const Vec& wstar, double alpha,
                              double beta, const SolverConfig& cfg = {});

struct AlignmentProbe {
  Vec probe;
  bool aligned = false;
  double tau = 0.0;
  double gap = 0.0;
};
struct AlignmentVerdict {
  bool consistent_with_quasidense = true;
  std::vector<AlignmentProbe> probes;
};
// Searches a (tau, tau) alignment at every probe; for product spaces the
// block norms must balance, elsewhere the r_L-gap criterion is used.
AlignmentVerdict quasidense_via_alignment(const LPositiveSet& A, const std::vector<Vec>& probes,
                                          const SolverConfig& cfg = {}, double tol = 1e-6);

struct AnaResult {
  bool found = false;  // not-found is inconclusive, never a refutation
  Vec s, sstar;
  double cosine = 0.0;
};
// Almost-negative-alignment probe: (s,s*) in G(S), s != w, s* != w*, with
// cosine <= -1 + epsilon.  Precondition: (w, w*) not in G(S).
AnaResult ana_probe(const MonoMap& S, const Vec& w, const Vec& wstar, double epsilon,
                    const SolverConfig& cfg = {});

// RHS - |a| for  |a| <= sqrt(2 r_L(a-b)) + (5/2) dist(b, A) + |b|.
// dist is exact on finite clouds and a sampled upper bound otherwise.
double zagrodny_slack(const LPositiveSet& A, const Vec& a, const Vec& b,
                      const SolverConfig& cfg = {});

}  // namespace snmono
