#pragma once

#include "snmono/common.hpp"
#include "snmono/ext_real.hpp"
#include "snmono/norms.hpp"

#include <optional>
#include <string>

namespace snmono {

// A coordinate space R^dim with a norm and a symmetric nonexpansive linear
// map L into the dual, given as a matrix under the standard pairing.  The
// pairing <.,.> is always the dot product; only the norm varies.
struct SnSpace {
  int dim = 0;
  NormKind norm;
  Mat L;

  bool is_product() const { return norm.is_product(); }
  int half_dim() const;

  // Block accessors for product spaces (x, x*).
  Vec primal_block(const Vec& b) const;
  Vec dual_block(const Vec& b) const;
  Vec join(const Vec& x, const Vec& xstar) const;
};

struct ValidationReport {
  bool ok = true;
  std::string violation;  // empty when ok
  Vec witness;            // a vector exhibiting the violation
  double measured = 0.0;  // the offending quantity (norm estimate / asymmetry)
};

ValidationReport validate_sn(const SnSpace& space);
void require_valid(const SnSpace& space);  // throws Error on violation

double q_form(const SnSpace& space, const Vec& b);  // q_L(b) = 0.5 <b, Lb>
double r_form(const SnSpace& space, const Vec& b);  // r_L = 0.5||.||^2 + q_L

// sup over c of  <c,b*> - q_L(c) - 0.5 ||Lc - b*||_dual^2.
// Exact (spectral) for euclidean norms; seeded multi-start ascent with a
// divergence heuristic otherwise.
enum class SupVerdict { finite, infinite, unknown };
struct SupResult {
  SupVerdict verdict = SupVerdict::finite;
  double value = 0.0;        // finite value, or best lower bound found
  Vec maximizer;             // argmax when finite
  bool heuristic = false;    // true when the verdict came from thresholds
};
SupResult s_function(const SnSpace& space, const Vec& bstar, const SolverConfig& cfg = {});

// The dual SN space (B*, swapped blocks) of a product space.
SnSpace dual_space(const SnSpace& space);

// --- canned constructions -------------------------------------------------

// E x E* with the block-swap map; `base` is the norm on E (its dual goes on
// the E* block).  Euclidean by default.
SnSpace product_space(int n, const NormKind& base = NormKind::euclidean());

// Hilbert space with L = lambda*I (sign = +1) or L = -lambda*I (sign = -1).
SnSpace scaled_hilbert_space(int dim, double lambda, int sign = +1);

// R^3 with L(b1,b2,b3) = lambda*(b2,b1,b3).
SnSpace swap12_space(double lambda);

}  // namespace snmono
