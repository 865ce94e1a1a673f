#include "snmono/touching.hpp"

#include "snmono/solvers.hpp"

#include <cmath>

namespace snmono {

namespace {

constexpr double kInfSentinel = 1e300;

bool euclidean_like(const NormKind& k) {
  if (k.tag() == NormTag::euclidean) return true;
  return k.is_product() && k.first().tag() == NormTag::euclidean &&
         k.second().tag() == NormTag::euclidean;
}

double inner_objective(const SnSpace& space, const ConvexFn& f, const Vec& c, const Vec& d) {
  const ExtReal fd = evaluate(f, d);
  if (fd.is_infinite()) return kInfSentinel;
  return fd.value() - q_form(space, d) + r_form(space, d - c);
}

}  // namespace

InnerGap inner_gap(const SnSpace& space, const ConvexFn& f, const Vec& c, const SolverConfig& cfg) {
  if (c.size() != space.dim || f.dim() != space.dim)
    throw DimensionError("inner_gap: dimension mismatch");
  InnerGap out;
  if (euclidean_like(space.norm)) {
    // (f - q_L)(d) + r_L(d - c) = f(d) + 0.5|d - (c + Lc)|^2 + r_L(c) - 0.5|c + Lc|^2,
    // so the minimizer is a prox evaluation.
    try {
      const Vec p = c + space.L * c;
      out.minimizer = prox(f, p);
      out.value = inner_objective(space, f, c, out.minimizer);
      out.exact = true;
      return out;
    } catch (const NoClosedForm&) {
      // fall through to the descent path
    }
  }
  const auto obj = [&](const Vec& d) { return inner_objective(space, f, c, d); };
  Rng rng(cfg.seed);
  std::vector<Vec> starts;
  starts.push_back(c);
  starts.push_back(domain_point(f));
  for (int k = 0; k < cfg.restarts; ++k)
    starts.push_back(domain_point(f) + random_vec(rng, space.dim, 1.0 + c.norm()));
  MinimizeResult r = multistart_min(obj, starts, 0.5, cfg.tol * 1e-2, cfg.max_iters, cfg.seed);
  out.value = r.value;
  out.minimizer = r.x;
  out.exact = false;
  return out;
}

TouchingCertificate is_touching(const SnSpace& space, const ConvexFn& f,
                                const std::vector<Vec>& test_points, const SolverConfig& cfg,
                                double tol) {
  if (test_points.empty()) throw Error("is_touching: no test points");
  // PC_q membership check at the test points and a seeded sample.
  Rng rng(cfg.seed + 13);
  std::vector<Vec> pcq_points = test_points;
  for (int k = 0; k < 16; ++k) pcq_points.push_back(random_vec(rng, space.dim, 2.0));
  for (const Vec& x : pcq_points) {
    const ExtReal fx = evaluate(f, x);
    if (!fx.is_infinite() && fx.value() < q_form(space, x) - 1e-9)
      throw Error("is_touching: f < q_L at a sample (not in PC_q)");
  }
  TouchingCertificate cert;
  bool any_inconclusive = false;
  for (const Vec& c : test_points) {
    InnerGap g = inner_gap(space, f, c, cfg);
    cert.probes.push_back({c, g.value, g.minimizer, g.exact});
    if (g.value > tol) {
      if (g.exact) {
        cert.verdict = TouchingVerdict::refuted;
        cert.witness = c;
        cert.refutation_bound = g.value;
        return cert;
      }
      any_inconclusive = true;
    }
  }
  cert.verdict = any_inconclusive ? TouchingVerdict::inconclusive : TouchingVerdict::touching_on_grid;
  return cert;
}

DualDominationCheck touching_dual_check(const SnSpace& space, const ConvexFn& f,
                                        const std::vector<Vec>& dual_samples,
                                        const SolverConfig& cfg, double tol) {
  DualDominationCheck out;
  out.worst_margin = kInfSentinel;
  const bool closed = has_closed_conjugate(f);
  for (const Vec& bstar : dual_samples) {
    ExtReal fstar = ExtReal::infinity();
    if (closed) {
      fstar = conjugate(f, bstar);
    } else {
      fstar = legendre_oracle(f, bstar, GridSpec::cube(space.dim, 4.0 * (1.0 + bstar.norm())));
    }
    const SupResult s = s_function(space, bstar, cfg);
    if (s.verdict == SupVerdict::infinite) {
      if (fstar.is_finite()) {
        out.consistent = false;
        out.witness = bstar;
        out.certified = closed;
        return out;
      }
      continue;
    }
    if (fstar.is_infinite()) continue;
    const double margin = fstar.value() - s.value;
    out.worst_margin = std::min(out.worst_margin, margin);
    if (margin < -tol) {
      out.consistent = false;
      out.witness = bstar;
      out.certified = closed && s.verdict == SupVerdict::finite && !s.heuristic;
      return out;
    }
  }
  return out;
}

CoincidenceTrace project_to_coincidence(const SnSpace& space, const ConvexFn& h, const Vec& c,
                                        double delta, const SolverConfig& cfg) {
  if (!(delta > 0.0 && delta < 0.5)) throw Error("project_to_coincidence: delta in ]0, 1/2[");
  CoincidenceTrace trace;
  Vec prev = c;
  double slack_budget = delta * delta;
  for (int n = 1; n <= 200; ++n) {
    InnerGap g = inner_gap(space, h, prev, cfg);
    if (g.value > slack_budget + 1e-12 * (1.0 + std::abs(g.value))) {
      trace.inner_failed = true;
      trace.a = prev;
      break;
    }
    trace.slacks.push_back(g.value);
    const double step = norm_value(space.norm, g.minimizer - prev);
    trace.step_norms.push_back(step);
    if (n == 1) trace.n_c = norm_value(space.norm, g.minimizer - c) + 3.0;
    prev = g.minimizer;
    trace.iterations = n;
    slack_budget *= delta * delta;
    if (slack_budget < 1e-14 || step < 1e-10) break;
  }
  if (!trace.inner_failed) trace.a = prev;
  const ExtReal ha = evaluate(h, trace.a);
  trace.final_residual = ha.is_infinite() ? kInfSentinel : ha.value() - q_form(space, trace.a);
  trace.dist_from_start = norm_value(space.norm, trace.a - c);
  return trace;
}

}  // namespace snmono
