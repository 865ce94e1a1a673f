#include "snmono/mono_ops.hpp"

#include "snmono/fitzpatrick.hpp"
#include "snmono/linalg.hpp"
#include "snmono/solvers.hpp"

#include <algorithm>
#include <cmath>

namespace snmono {

namespace {

constexpr double kInfSentinel = 1e300;

std::pair<double, double> seq_coeffs(const SequenceRep& rep) {
  switch (rep.kind) {
    case SeqKind::tail: return {1.0, 0.0};
    case SeqKind::head: return {0.0, 1.0};
    case SeqKind::combo: return {rep.lambda, rep.mu};
  }
  return {1.0, 0.0};
}

}  // namespace

MonoMap MonoMap::linear(Mat M) {
  if (M.rows() != M.cols()) throw DimensionError("MonoMap::linear: square matrix required");
  const int n = static_cast<int>(M.rows());
  return MonoMap(n, LinearMapRep{std::move(M)});
}

MonoMap MonoMap::identity(int n) { return linear(Mat::Identity(n, n)); }

MonoMap MonoMap::subdiff(ConvexFn k) {
  const int n = k.dim();
  return MonoMap(n, SubdiffRep{std::move(k)});
}

MonoMap MonoMap::finite_graph(std::vector<std::pair<Vec, Vec>> pairs) {
  if (pairs.empty()) throw Error("MonoMap::finite_graph: empty");
  const int n = static_cast<int>(pairs.front().first.size());
  return MonoMap(n, FiniteGraphRep{std::move(pairs)});
}

MonoMap MonoMap::sequence(SeqKind kind, int trunc, double lambda, double mu) {
  return MonoMap(trunc, SequenceRep{kind, lambda, mu, trunc});
}

LPositiveSet MonoMap::graph_set() const {
  return std::visit(
      [&](const auto& rep) -> LPositiveSet {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, FiniteGraphRep>) {
          std::vector<Vec> pts;
          SnSpace sp = product_space(n_);
          for (const auto& [x, xs] : rep.pairs) pts.push_back(sp.join(x, xs));
          return LPositiveSet(std::move(sp), FiniteCloud{std::move(pts)});
        } else if constexpr (std::is_same_v<T, LinearMapRep>) {
          return operator_graph_set(n_, rep.M);
        } else if constexpr (std::is_same_v<T, SubdiffRep>) {
          return subdiff_graph_set(rep.k);
        } else {
          return sequence_set(rep.kind, rep.trunc, rep.lambda, rep.mu);
        }
      },
      rep_);
}

std::vector<std::pair<Vec, Vec>> MonoMap::sample_graph(int count, std::uint64_t seed,
                                                       double scale) const {
  const LPositiveSet set = graph_set();
  std::vector<std::pair<Vec, Vec>> out;
  for (const Vec& p : set.sample(count, seed, scale))
    out.emplace_back(p.head(n_), p.tail(p.size() - n_));
  return out;
}

bool MonoMap::graph_contains(const Vec& x, const Vec& xstar, double tol) const {
  return std::visit(
      [&](const auto& rep) -> bool {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, FiniteGraphRep>) {
          for (const auto& [s, ss] : rep.pairs)
            if ((s - x).norm() + (ss - xstar).norm() <= tol * (1.0 + x.norm() + xstar.norm()))
              return true;
          return false;
        } else if constexpr (std::is_same_v<T, LinearMapRep>) {
          return (xstar - rep.M * x).norm() <= tol * (1.0 + x.norm() + xstar.norm());
        } else if constexpr (std::is_same_v<T, SubdiffRep>) {
          return subdiff_contains(rep.k, x, xstar, tol);
        } else {
          const auto [lam, mu] = seq_coeffs(rep);
          return (xstar - combo_apply(lam, mu, x)).norm() <= tol * (1.0 + x.norm());
        }
      },
      rep_);
}

std::optional<std::pair<Vec, Vec>> monotonicity_witness(const MonoMap& S, int samples,
                                                        std::uint64_t seed) {
  const auto pairs = S.sample_graph(samples, seed);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const double q = (pairs[i].first - pairs[j].first).dot(pairs[i].second - pairs[j].second);
      if (q < -1e-12)
        return std::make_pair(Vec(pairs[i].first - pairs[j].first),
                              Vec(pairs[i].second - pairs[j].second));
    }
  return std::nullopt;
}

// --- sums -----------------------------------------------------------------------

MonoMap op_sum(const MonoMap& S, const MonoMap& T, const SolverConfig& cfg) {
  if (S.domain_dim() != T.domain_dim()) throw DimensionError("op_sum: dimension mismatch");
  const int n = S.domain_dim();
  const auto* ls = std::get_if<LinearMapRep>(&S.rep());
  const auto* lt = std::get_if<LinearMapRep>(&T.rep());
  if (ls && lt) return MonoMap::linear(ls->M + lt->M);
  const auto* ds = std::get_if<SubdiffRep>(&S.rep());
  const auto* dt = std::get_if<SubdiffRep>(&T.rep());
  if (ds && dt) return MonoMap::subdiff(ConvexFn::sum({ds->k, dt->k}));
  const auto* qs = std::get_if<SequenceRep>(&S.rep());
  const auto* qt = std::get_if<SequenceRep>(&T.rep());
  if (qs && qt && qs->trunc == qt->trunc) {
    const auto [l1, m1] = seq_coeffs(*qs);
    const auto [l2, m2] = seq_coeffs(*qt);
    return MonoMap::sequence(SeqKind::combo, qs->trunc, l1 + l2, m1 + m2);
  }
  // Linear + subdifferential of a quadratic stays symbolic.
  if (ls && dt) {
    if ((ls->M - ls->M.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + ls->M.cwiseAbs().maxCoeff()))
      return MonoMap::subdiff(ConvexFn::sum({ConvexFn::quadratic(ls->M, Vec::Zero(n)), dt->k}));
  }
  if (lt && ds) return op_sum(T, S, cfg);
  // Sampled fallback on a common x grid.
  std::vector<std::pair<Vec, Vec>> pairs;
  Rng rng(cfg.seed);
  for (int i = 0; i < 64; ++i) {
    const Vec x = i == 0 ? Vec(Vec::Zero(n)) : random_vec(rng, n, 2.0);
    Vec sx, tx;
    bool ok = true;
    for (const auto* m : {&S, &T}) {
      Vec val;
      if (const auto* l = std::get_if<LinearMapRep>(&m->rep()))
        val = l->M * x;
      else if (const auto* d = std::get_if<SubdiffRep>(&m->rep())) {
        // Gradient selection at x through a vanishing prox step.
        const double h = 1e-6;
        val = (x - prox(d->k, x, h)) / h;
        if (!subdiff_contains(d->k, x, val, 1e-4)) ok = false;
      } else {
        ok = false;
      }
      if (m == &S)
        sx = val;
      else
        tx = val;
    }
    if (ok) pairs.emplace_back(x, sx + tx);
  }
  if (pairs.empty()) throw Error("op_sum: empty sampled domain intersection");
  return MonoMap::finite_graph(std::move(pairs));
}

MonoMap parallel_sum(const MonoMap& S, const MonoMap& T, const SolverConfig& cfg) {
  if (S.domain_dim() != T.domain_dim()) throw DimensionError("parallel_sum: dimension mismatch");
  const int n = S.domain_dim();
  const auto* ls = std::get_if<LinearMapRep>(&S.rep());
  const auto* lt = std::get_if<LinearMapRep>(&T.rep());
  if (ls && lt) {
    Eigen::FullPivLU<Mat> lu1(ls->M), lu2(lt->M);
    if (lu1.isInvertible() && lu2.isInvertible()) {
      const Mat sum_inv = lu1.inverse() + lu2.inverse();
      Eigen::FullPivLU<Mat> lu3(sum_inv);
      if (lu3.isInvertible()) return MonoMap::linear(lu3.inverse());
    }
  }
  // Sampled inverse-sum-inverse: for a y* grid, find s in S^{-1}y*, t in
  // T^{-1}y*, record (s + t, y*).
  std::vector<std::pair<Vec, Vec>> pairs;
  Rng rng(cfg.seed);
  const auto invert_at = [&](const MonoMap& m, const Vec& ystar, Vec* out) -> bool {
    if (const auto* l = std::get_if<LinearMapRep>(&m.rep())) {
      Eigen::CompleteOrthogonalDecomposition<Mat> cod(l->M);
      const Vec x = cod.solve(ystar);
      if ((l->M * x - ystar).norm() > 1e-8 * (1.0 + ystar.norm())) return false;
      *out = x;
      return true;
    }
    if (const auto* d = std::get_if<SubdiffRep>(&m.rep())) {
      // x with y* in dk(x): minimize k(x) - <x, y*>.
      const auto obj = [&](const Vec& x) {
        const ExtReal v = evaluate(d->k, x);
        return v.is_infinite() ? kInfSentinel : v.value() - x.dot(ystar);
      };
      std::vector<Vec> starts{Vec::Zero(n), domain_point(d->k)};
      for (int k = 0; k < 6; ++k) starts.push_back(random_vec(rng, n, 2.0));
      MinimizeResult r = multistart_min(obj, starts, 0.5, 1e-10, cfg.max_iters, cfg.seed, 1e8);
      if (r.diverged || !subdiff_contains(d->k, r.x, ystar, 1e-5)) return false;
      *out = r.x;
      return true;
    }
    return false;
  };
  for (int i = 0; i < 64; ++i) {
    const Vec ystar = i == 0 ? Vec(Vec::Zero(n)) : random_vec(rng, n, 2.0);
    Vec s, t;
    if (invert_at(S, ystar, &s) && invert_at(T, ystar, &t)) pairs.emplace_back(s + t, ystar);
  }
  if (pairs.empty()) throw Error("parallel_sum: no common range points sampled");
  return MonoMap::finite_graph(std::move(pairs));
}

// --- partial inf-convolutions ------------------------------------------------------

namespace {

InfConvValue partial_infconv(const SnSpace& space, const ConvexFn& f, const ConvexFn& g,
                             const Vec& x, const Vec& xstar, bool over_dual_block,
                             const SolverConfig& cfg) {
  const int n = space.half_dim();
  if (f.dim() != space.dim || g.dim() != space.dim)
    throw DimensionError("infconv: function dims");
  const auto value_at = [&](const Vec& xi) {
    ExtReal a, b;
    if (over_dual_block) {
      a = evaluate(f, space.join(x, xstar - xi));
      b = evaluate(g, space.join(x, xi));
    } else {
      a = evaluate(f, space.join(x - xi, xstar));
      b = evaluate(g, space.join(xi, xstar));
    }
    if (a.is_infinite() || b.is_infinite()) return kInfSentinel;
    return a.value() + b.value();
  };
  // Coarse scan for a finite seed.
  const double R = 4.0 * (1.0 + x.norm() + xstar.norm());
  InfConvValue out;
  double best = kInfSentinel;
  Vec best_xi = Vec::Zero(n);
  if (n == 1) {
    for (int i = 0; i <= 64; ++i) {
      Vec xi(1);
      xi[0] = -R + 2.0 * R * i / 64.0;
      const double v = value_at(xi);
      if (v < best) {
        best = v;
        best_xi = xi;
      }
    }
  } else {
    Rng rng(cfg.seed);
    for (int i = 0; i < 256; ++i) {
      const Vec xi = i == 0 ? Vec(Vec::Zero(n)) : random_vec(rng, n, R / 2.0);
      const double v = value_at(xi);
      if (v < best) {
        best = v;
        best_xi = xi;
      }
    }
  }
  if (best >= kInfSentinel) {
    out.value = ExtReal::infinity();
    return out;
  }
  if (n == 1) {
    const auto f1 = [&](double t) {
      Vec xi(1);
      xi[0] = t;
      return value_at(xi);
    };
    const double t = line_min(f1, best_xi[0], 0.5, 1e-12);
    Vec xi(1);
    xi[0] = t;
    const double v = value_at(xi);
    if (v < best) {
      best = v;
      best_xi = xi;
    }
    out.budget_exhausted = false;
  } else {
    Rng rng(cfg.seed + 1);
    MinimizeResult r = pattern_search_min(value_at, best_xi, 0.5, cfg.tol * 1e-2, cfg.max_iters, rng);
    if (r.value < best) {
      best = r.value;
      best_xi = r.x;
    }
    out.budget_exhausted = !r.converged;
  }
  out.value = best;
  out.attaining = best_xi;
  return out;
}

}  // namespace

InfConvValue domain_infconv(const SnSpace& space, const ConvexFn& f, const ConvexFn& g,
                            const Vec& x, const Vec& xstar, const SolverConfig& cfg) {
  return partial_infconv(space, f, g, x, xstar, /*over_dual_block=*/true, cfg);
}

InfConvValue range_infconv(const SnSpace& space, const ConvexFn& f, const ConvexFn& g,
                           const Vec& x, const Vec& xstar, const SolverConfig& cfg) {
  return partial_infconv(space, f, g, x, xstar, /*over_dual_block=*/false, cfg);
}

// --- sum identity -------------------------------------------------------------------

SumIdentityReport sum_identity_check(const MonoMap& S, const MonoMap& T,
                                     const std::vector<std::pair<Vec, Vec>>& probes,
                                     const SolverConfig& cfg, double tol) {
  if (S.domain_dim() != 1 || T.domain_dim() != 1)
    throw Error("sum_identity_check: implemented for scalar maps");
  const SnSpace sp = product_space(1);
  const auto setS = std::make_shared<const LPositiveSet>(S.graph_set());
  const auto setT = std::make_shared<const LPositiveSet>(T.graph_set());
  const ConvexFn fS = ConvexFn::fitzpatrick_of(setS);
  const ConvexFn fT = ConvexFn::fitzpatrick_of(setT);
  const MonoMap sum = op_sum(S, T, cfg);

  const auto h_at = [&](const Vec& b) {
    const InfConvValue v = domain_infconv(sp, fS, fT, b.head(1), b.tail(1), cfg);
    return v.value.is_infinite() ? kInfSentinel : v.value.value();
  };

  SumIdentityReport report;
  for (const auto& [y, ystar] : probes) {
    SumIdentityProbe probe;
    probe.y = y;
    probe.ystar = ystar;
    probe.q = y.dot(ystar);
    probe.member_direct = sum.graph_contains(y, ystar, 1e-7);

    // Oracle route: conjugate of h at L(y, y*) over a refined 2-D grid.
    const Vec ell = sp.L * sp.join(y, ystar);
    const double R = 4.0 * (1.0 + y.norm() + ystar.norm());
    double best = -kInfSentinel;
    Vec center = Vec::Zero(2);
    double half = R;
    const int pts = 21;
    for (int level = 0; level < 6; ++level) {
      Vec arg = center;
      for (int i = 0; i < pts; ++i)
        for (int j = 0; j < pts; ++j) {
          Vec b(2);
          b[0] = center[0] - half + 2.0 * half * i / (pts - 1);
          b[1] = center[1] - half + 2.0 * half * j / (pts - 1);
          const double hv = h_at(b);
          if (hv >= kInfSentinel) continue;
          const double val = b.dot(ell) - hv;
          if (val > best) {
            best = val;
            arg = b;
          }
        }
      center = arg;
      half = 4.0 * half / (pts - 1);
    }
    probe.h_circ_oracle = best;

    // Upper bound through the splitting formula: any inner point u* gives
    //   h^(*)(y,y*) <= fS^(*)(y, y*-u*) + fT^(*)(y, u*).
    // Candidates: a scan + golden polish (interval domains) and subgradient
    // selections at y (point domains of linear graphs).
    const auto piece = [&](const ConvexFn& fn, double a, double b2) {
      Vec arg(2);
      arg[0] = a;
      arg[1] = b2;
      const ExtReal v = conjugate(fn, sp.L * arg);
      return v.is_infinite() ? kInfSentinel : v.value();
    };
    const auto minform = [&](double ustar) {
      const double va = piece(fS, y[0], ystar[0] - ustar);
      const double vb = piece(fT, y[0], ustar);
      if (va >= kInfSentinel || vb >= kInfSentinel) return kInfSentinel;
      return va + vb;
    };
    double upper = kInfSentinel;
    for (int i = 0; i <= 64; ++i) upper = std::min(upper, minform(-R + 2.0 * R * i / 64.0));
    upper = std::min(upper, minform(golden_min(minform, -R, R, 1e-10)));
    const auto selection = [&](const MonoMap& m) {
      if (const auto* d = std::get_if<SubdiffRep>(&m.rep())) {
        const auto s = subgradient_at(d->k, y[0]);
        return s ? *s : 0.0;
      }
      if (const auto* l = std::get_if<LinearMapRep>(&m.rep())) return l->M(0, 0) * y[0];
      return 0.0;
    };
    upper = std::min(upper, minform(selection(T)));
    upper = std::min(upper, minform(ystar[0] - selection(S)));
    probe.h_circ_minform = upper;

    // Decide coincidence: the oracle is a certified lower bound, the
    // splitting value a certified upper bound.
    if (upper <= probe.q + tol) {
      probe.coincides = true;
      probe.conclusive = true;
    } else if (probe.h_circ_oracle > probe.q + tol) {
      probe.coincides = false;
      probe.conclusive = true;
    } else {
      probe.coincides = std::abs(probe.h_circ_oracle - probe.q) <= tol;
      probe.conclusive = false;  // bounds straddle the threshold
    }
    if (probe.conclusive && probe.coincides != probe.member_direct) report.all_agree = false;
    report.probes.push_back(std::move(probe));
  }
  return report;
}

// --- deformation ---------------------------------------------------------------------

LPositiveSet deform(const LPositiveSet& A, double alpha, double beta) {
  if (alpha <= 0.0 || beta <= 0.0) throw Error("deform: alpha, beta > 0");
  const SnSpace& sp = A.space();
  if (!sp.is_product()) throw Error("deform: product space required");
  const int n = sp.half_dim();
  return std::visit(
      [&](const auto& rep) -> LPositiveSet {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, FiniteCloud>) {
          std::vector<Vec> pts;
          for (const Vec& p : rep.points)
            pts.push_back(sp.join(p.head(n) / alpha, p.tail(n) / beta));
          return LPositiveSet(sp, FiniteCloud{std::move(pts)});
        } else if constexpr (std::is_same_v<T, LinearSubspaceRep>) {
          Mat b = rep.basis;
          b.topRows(n) /= alpha;
          b.bottomRows(n) /= beta;
          return LPositiveSet(sp, LinearSubspaceRep{std::move(b)});
        } else if constexpr (std::is_same_v<T, OperatorGraphRep>) {
          const Vec off = rep.offset.size() ? rep.offset : Vec(Vec::Zero(n));
          return LPositiveSet(sp, OperatorGraphRep{(alpha / beta) * rep.M, off / beta});
        } else if constexpr (std::is_same_v<T, SubdiffGraphRep>) {
          // Delta(G(dk)) = G(d k') with k' = k(alpha .)/(alpha beta).
          return LPositiveSet(sp, SubdiffGraphRep{scale_arg(rep.k, alpha, 1.0 / (alpha * beta))});
        } else {
          const auto& r = rep;
          const double s = alpha / beta;
          double lam = r.lambda, mu = r.mu;
          switch (r.kind) {
            case SeqKind::tail: lam = 1.0; mu = 0.0; break;
            case SeqKind::head: lam = 0.0; mu = 1.0; break;
            case SeqKind::combo: break;
          }
          return LPositiveSet(sp, SequenceOperatorRep{SeqKind::combo, s * lam, s * mu, r.trunc});
        }
      },
      A.rep());
}

// --- resolvent oracle ------------------------------------------------------------------

ResolventGap resolvent_gap_oracle(const MonoMap& S, const Vec& w, const Vec& wstar) {
  const int n = S.domain_dim();
  if (w.size() != n || wstar.size() != n) throw DimensionError("resolvent_gap_oracle: dims");
  const Vec tau = w + wstar;
  ResolventGap out;
  std::visit(
      [&](const auto& rep) {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, LinearMapRep>) {
          const Mat IM = Mat::Identity(n, n) + rep.M;
          const Vec s = IM.completeOrthogonalDecomposition().solve(tau);
          out.s = s;
          out.sstar = rep.M * s;
        } else if constexpr (std::is_same_v<T, SubdiffRep>) {
          out.s = prox(rep.k, tau);
          out.sstar = tau - out.s;
        } else if constexpr (std::is_same_v<T, FiniteGraphRep>) {
          double best = std::numeric_limits<double>::infinity();
          for (const auto& [s, ss] : rep.pairs) {
            const double v = 0.5 * (s + ss - tau).squaredNorm();
            if (v < best) {
              best = v;
              out.s = s;
              out.sstar = ss;
            }
          }
        } else {
          throw Error("resolvent_gap_oracle: euclidean representations only");
        }
      },
      S.rep());
  out.gap = 0.5 * (out.s + out.sstar - tau).squaredNorm();
  return out;
}

}  // namespace snmono
