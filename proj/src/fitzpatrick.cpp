#include "snmono/fitzpatrick.hpp"

#include "snmono/linalg.hpp"
#include "snmono/solvers.hpp"

#include <cmath>

namespace snmono {

namespace {

// 1-D closed-form Fitzpatrick atoms for separable subdifferential graphs:
// value of sup over the graph of ell1*s + ell2*s' - s*s'.
struct Atom1D {
  // abs: alpha|s|; box: [lo, hi].
  enum class Kind { abs, box } kind;
  double alpha = 1.0, lo = 0.0, hi = 0.0;

  ExtReal sup(double l1, double l2) const {
    if (kind == Kind::abs) {
      if (std::abs(l1) > alpha + 1e-12) return ExtReal::infinity();
      return alpha * std::abs(l2);
    }
    if (l2 < lo - 1e-12 || l2 > hi + 1e-12) return ExtReal::infinity();
    return std::max(lo * l1, hi * l1);
  }
  ExtReal conj(double u, double v) const {
    if (kind == Kind::abs) {
      if (std::abs(u) > alpha + 1e-12) return ExtReal::infinity();
      return alpha * std::abs(v);
    }
    if (v < lo - 1e-12 || v > hi + 1e-12) return ExtReal::infinity();
    return std::max(lo * u, hi * u);
  }
};

// Decompose a subdifferential-graph generator into separable 1-D atoms when
// the family allows it; empty optional otherwise.
std::optional<std::vector<Atom1D>> separable_atoms(const ConvexFn& k) {
  if (const auto* np = std::get_if<NormPower>(&k.family())) {
    if (np->p == 1 && np->base.tag() == NormTag::ell1) {
      std::vector<Atom1D> atoms(k.dim());
      for (auto& a : atoms) a = Atom1D{Atom1D::Kind::abs, np->alpha, 0, 0};
      return atoms;
    }
    return std::nullopt;
  }
  if (const auto* box = std::get_if<IndicatorBox>(&k.family())) {
    std::vector<Atom1D> atoms(k.dim());
    for (int i = 0; i < k.dim(); ++i) atoms[i] = Atom1D{Atom1D::Kind::box, 0, box->lo[i], box->hi[i]};
    return atoms;
  }
  return std::nullopt;
}

// Affine+quadratic graph data (M, offset) when the subdifferential is an
// affine map.
std::optional<std::pair<Mat, Vec>> affine_graph(const ConvexFn& k) {
  if (const auto* q = std::get_if<Quadratic>(&k.family())) return std::make_pair(q->Q, q->b);
  if (const auto* np = std::get_if<NormPower>(&k.family())) {
    if (np->p == 2 && np->base.tag() == NormTag::euclidean)
      return std::make_pair(Mat(2.0 * np->alpha * Mat::Identity(k.dim(), k.dim())),
                            Vec(Vec::Zero(k.dim())));
  }
  return std::nullopt;
}

// sup over {a = P t + r} of <a, ell> - q_L(a), through the PSD quadratic sup.
struct ParamSup {
  ExtReal value;
  Vec arg;  // the attaining set member
};
ParamSup parametrized_sup(const SnSpace& sp, const Mat& P, const Vec& r, const Vec& ell) {
  const Mat G = P.transpose() * sp.L * P;
  const Vec v = P.transpose() * (ell - sp.L * r);
  QuadSup qs = quadratic_sup(G, v);
  if (qs.value.is_infinite()) return {ExtReal::infinity(), Vec()};
  const double constant = r.dot(ell) - q_form(sp, r);
  return {ExtReal(qs.value.value() + constant), Vec(P * qs.arg + r)};
}

Mat operator_graph_param(const SnSpace& sp, const Mat& M) {
  const int n = sp.half_dim();
  Mat P(sp.dim, n);
  P.topRows(n) = Mat::Identity(n, n);
  P.bottomRows(n) = M;
  return P;
}

}  // namespace

ExtReal sup_linear_minus_q(const LPositiveSet& A, const Vec& ell, const SolverConfig& cfg) {
  const SnSpace& sp = A.space();
  if (ell.size() != sp.dim) throw DimensionError("sup_linear_minus_q: dimension mismatch");
  return std::visit(
      [&](const auto& rep) -> ExtReal {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, FiniteCloud>) {
          double best = -std::numeric_limits<double>::infinity();
          for (const Vec& p : rep.points) best = std::max(best, p.dot(ell) - q_form(sp, p));
          return best;
        } else if constexpr (std::is_same_v<T, LinearSubspaceRep>) {
          const Mat B = orthonormal_span(rep.basis);
          return parametrized_sup(sp, B, Vec::Zero(sp.dim), ell).value;
        } else if constexpr (std::is_same_v<T, OperatorGraphRep>) {
          const int n = sp.half_dim();
          const Vec off = rep.offset.size() ? rep.offset : Vec(Vec::Zero(n));
          Vec r = Vec::Zero(sp.dim);
          r.tail(n) = off;
          return parametrized_sup(sp, operator_graph_param(sp, rep.M), r, ell).value;
        } else if constexpr (std::is_same_v<T, SubdiffGraphRep>) {
          const int n = sp.half_dim();
          if (auto aff = affine_graph(rep.k)) {
            Vec r = Vec::Zero(sp.dim);
            r.tail(n) = aff->second;
            return parametrized_sup(sp, operator_graph_param(sp, aff->first), r, ell).value;
          }
          if (auto atoms = separable_atoms(rep.k)) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
              const ExtReal v = (*atoms)[i].sup(ell[i], ell[n + i]);
              if (v.is_infinite()) return ExtReal::infinity();
              acc += v.value();
            }
            return acc;
          }
          // Minty-parametrized ascent.
          const auto neg = [&](const Vec& tau) {
            const Vec s = prox(rep.k, tau);
            const Vec pt = sp.join(s, tau - s);
            return -(pt.dot(ell) - q_form(sp, pt));
          };
          Rng rng(cfg.seed);
          std::vector<Vec> starts{Vec::Zero(n)};
          for (int k = 0; k < cfg.restarts + 4; ++k)
            starts.push_back(random_vec(rng, n, 1.0 + ell.norm()));
          MinimizeResult r = multistart_min(neg, starts, 1.0, cfg.tol, cfg.max_iters, cfg.seed,
                                            cfg.divergence_threshold);
          if (r.diverged) return ExtReal::infinity();
          return -r.value;
        } else {  // SequenceOperatorRep
          const int N = rep.trunc;
          Vec ell1 = ell.head(N), ell2 = ell.segment(N, N);
          // sup_x <x, ell1> + <Ax, ell2> - <x, Ax> with A = lam T + mu H:
          // exact concave-quadratic sup over R^N.
          const auto [lam, mu] = [&] {
            switch (rep.kind) {
              case SeqKind::tail: return std::make_pair(1.0, 0.0);
              case SeqKind::head: return std::make_pair(0.0, 1.0);
              default: return std::make_pair(rep.lambda, rep.mu);
            }
          }();
          Mat T = Mat::Zero(N, N), H = Mat::Zero(N, N);
          for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
              if (j >= i) T(i, j) = 1.0;
              if (j <= i) H(i, j) = 1.0;
            }
          const Mat Aop = lam * T + mu * H;
          const Mat G = Aop + Aop.transpose();  // Hessian of the pairing term
          const Vec v = ell1 + Aop.transpose() * ell2;
          QuadSup qs = quadratic_sup(G, v);
          return qs.value;
        }
      },
      A.rep());
}

ExtReal phi(const LPositiveSet& A, const Vec& b, const SolverConfig& cfg) {
  return sup_linear_minus_q(A, A.space().L * b, cfg);
}

ExtReal theta(const LPositiveSet& A, const Vec& bstar, const SolverConfig& cfg) {
  return sup_linear_minus_q(A, bstar, cfg);
}

ExtReal phi_conjugate(const LPositiveSet& A, const Vec& bstar, const SolverConfig& cfg) {
  const SnSpace& sp = A.space();
  if (bstar.size() != sp.dim) throw DimensionError("phi_conjugate: dimension mismatch");
  return std::visit(
      [&](const auto& rep) -> ExtReal {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, FiniteCloud>) {
          // Phi_A = max of affine pieces <Lp_i, .> - q(p_i); the conjugate is
          // the convexified vertex interpolation: a small simplex program
          // solved by penalty continuation.
          const int m = static_cast<int>(rep.points.size());
          Mat C(m, sp.dim);
          Vec d(m);
          for (int i = 0; i < m; ++i) {
            C.row(i) = (sp.L * rep.points[i]).transpose();
            d[i] = -q_form(sp, rep.points[i]);
          }
          Vec lam = Vec::Constant(m, 1.0 / m);
          const Mat CCt = C * C.transpose();
          const double lip0 = m ? Eigen::SelfAdjointEigenSolver<Mat>(CCt).eigenvalues().maxCoeff() : 1.0;
          for (double rho : {1e2, 1e4, 1e6, 1e8}) {
            const double lip = std::max(1e-12, 2.0 * rho * lip0) ;
            for (int it = 0; it < 4000; ++it) {
              const Vec resid = C.transpose() * lam - bstar;
              const Vec grad = -d + 2.0 * rho * (C * resid);
              lam = project_simplex(lam - grad / lip);
            }
          }
          const double resid = (C.transpose() * lam - bstar).norm();
          if (resid > 1e-6 * (1.0 + bstar.norm())) return ExtReal::infinity();
          return -d.dot(lam);
        } else if constexpr (std::is_same_v<T, OperatorGraphRep>) {
          const int n = sp.half_dim();
          const Vec off = rep.offset.size() ? rep.offset : Vec(Vec::Zero(n));
          const Vec ystar = bstar.head(n), ystarstar = bstar.tail(n);
          const Mat S = rep.M + rep.M.transpose();
          if ((ystar - rep.M * ystarstar - off).norm() > 1e-8 * (1.0 + bstar.norm()))
            return ExtReal::infinity();
          return off.dot(ystarstar) + 0.5 * ystarstar.dot(S * ystarstar);
        } else if constexpr (std::is_same_v<T, LinearSubspaceRep>) {
          const Mat B = orthonormal_span(rep.basis);
          const Mat G = B.transpose() * sp.L * B;
          const Mat E = sp.L * B;  // constraint E' w? see below
          // Phi(b) = psi_G(C b) with C = B'L; Phi*(y) = min{ 0.5 w'Gw : C'w = y }.
          EqQp qp = qp_equality_min(G, Vec::Zero(G.rows()), Mat(E), bstar);
          if (!qp.feasible) return ExtReal::infinity();
          return qp.value;
        } else if constexpr (std::is_same_v<T, SubdiffGraphRep>) {
          const int n = sp.half_dim();
          if (auto aff = affine_graph(rep.k)) {
            OperatorGraphRep og{aff->first, aff->second};
            LPositiveSet tmp(sp, og);
            return phi_conjugate(tmp, bstar, cfg);
          }
          if (auto atoms = separable_atoms(rep.k)) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
              const ExtReal v = (*atoms)[i].conj(bstar[i], bstar[n + i]);
              if (v.is_infinite()) return ExtReal::infinity();
              acc += v.value();
            }
            return acc;
          }
          throw NoClosedForm("phi_conjugate: unsupported subdifferential generator");
        } else {
          throw NoClosedForm("phi_conjugate: sequence representation");
        }
      },
      A.rep());
}

Vec phi_prox(const LPositiveSet& A, const Vec& p, double weight, const SolverConfig& cfg) {
  const SnSpace& sp = A.space();
  if (p.size() != sp.dim) throw DimensionError("phi_prox: dimension mismatch");
  return std::visit(
      [&](const auto& rep) -> Vec {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, FiniteCloud>) {
          const int m = static_cast<int>(rep.points.size());
          Mat C(m, sp.dim);
          Vec d(m);
          for (int i = 0; i < m; ++i) {
            C.row(i) = (sp.L * rep.points[i]).transpose();
            d[i] = -q_form(sp, rep.points[i]);
          }
          const Vec lam = simplex_qp_max(weight * C, weight * (C * p + d), 4000);
          return p - weight * (C.transpose() * lam);
        } else if constexpr (std::is_same_v<T, OperatorGraphRep>) {
          const int n = sp.half_dim();
          const Vec off = rep.offset.size() ? rep.offset : Vec(Vec::Zero(n));
          const Mat S = rep.M + rep.M.transpose();
          Eigen::SelfAdjointEigenSolver<Mat> es(S);
          const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
          // S = U diag(lam) U'; split into range / null parts.
          std::vector<int> pos, zero;
          for (int i = 0; i < n; ++i)
            (es.eigenvalues()[i] > 1e-10 * scale ? pos : zero).push_back(i);
          Mat Up(n, pos.size()), U0(n, zero.size());
          Vec lp(pos.size());
          for (std::size_t i = 0; i < pos.size(); ++i) {
            Up.col(i) = es.eigenvectors().col(pos[i]);
            lp[i] = es.eigenvalues()[pos[i]];
          }
          for (std::size_t i = 0; i < zero.size(); ++i) U0.col(i) = es.eigenvectors().col(zero[i]);
          // Phi(b) = <u0, b1> + 0.5 v'S+ v + I(U0'v = 0), v = b2 + M'b1 - u0.
          Mat C(n, sp.dim);
          C.leftCols(n) = rep.M.transpose();
          C.rightCols(n) = Mat::Identity(n, n);
          Mat Sp = Mat::Zero(n, n);
          for (std::size_t i = 0; i < pos.size(); ++i)
            Sp += Up.col(i) * Up.col(i).transpose() / lp[i];
          Vec t0 = Vec::Zero(sp.dim);
          t0.head(n) = off;
          const Mat H = Mat::Identity(sp.dim, sp.dim) + weight * C.transpose() * Sp * C;
          const Vec g = weight * t0 - weight * C.transpose() * (Sp * off) - p;
          Mat E(zero.size(), sp.dim);
          Vec dd(zero.size());
          if (!zero.empty()) {
            E = U0.transpose() * C;
            dd = U0.transpose() * off;
          }
          EqQp qp = qp_equality_min(H, g, E, dd);
          if (!qp.feasible) throw Error("phi_prox: infeasible KKT system");
          return qp.w;
        } else if constexpr (std::is_same_v<T, SubdiffGraphRep>) {
          const int n = sp.half_dim();
          if (auto aff = affine_graph(rep.k)) {
            OperatorGraphRep og{aff->first, aff->second};
            LPositiveSet tmp(sp, og);
            return phi_prox(tmp, p, weight, cfg);
          }
          if (auto atoms = separable_atoms(rep.k)) {
            // Per-coordinate: the two blocks decouple for these atoms.
            Vec out(sp.dim);
            for (int i = 0; i < n; ++i) {
              const Atom1D& a = (*atoms)[i];
              if (a.kind == Atom1D::Kind::abs) {
                // phi = alpha|x| + I(|x*| <= alpha)
                const double ax = p[i], axs = p[n + i];
                out[i] = ax > weight * a.alpha ? ax - weight * a.alpha
                                               : (ax < -weight * a.alpha ? ax + weight * a.alpha : 0.0);
                out[n + i] = std::clamp(axs, -a.alpha, a.alpha);
              } else {
                // phi = max(lo x*, hi x*) + I(x in [lo, hi])
                out[i] = std::clamp(p[i], a.lo, a.hi);
                const double v = p[n + i];
                out[n + i] = v - weight * std::clamp(v / weight, a.lo, a.hi);
              }
            }
            return out;
          }
          throw NoClosedForm("phi_prox: unsupported subdifferential generator");
        } else {
          throw NoClosedForm("phi_prox: unsupported representation");
        }
      },
      A.rep());
}

// --- markers --------------------------------------------------------------------

struct MarkerCandidate::MixNode {
  double w1, w2;
  MarkerCandidate g1, g2;
};

MarkerCandidate MarkerCandidate::phi_conjugate_of() {
  MarkerCandidate m;
  m.kind_ = Kind::phi_conjugate_of;
  return m;
}
MarkerCandidate MarkerCandidate::theta_of() {
  MarkerCandidate m;
  m.kind_ = Kind::theta_of;
  return m;
}
MarkerCandidate MarkerCandidate::convex(ConvexFn f) {
  MarkerCandidate m;
  m.kind_ = Kind::fn;
  m.fn_ = std::move(f);
  return m;
}
MarkerCandidate MarkerCandidate::grid(GridFunction g) {
  MarkerCandidate m;
  m.kind_ = Kind::grid;
  m.grid_ = std::move(g);
  return m;
}
MarkerCandidate MarkerCandidate::mix(double w1, MarkerCandidate g1, double w2, MarkerCandidate g2) {
  if (w1 <= 0 || w2 <= 0 || std::abs(w1 + w2 - 1.0) > 1e-12)
    throw Error("MarkerCandidate::mix: weights must be positive and sum to 1");
  MarkerCandidate m;
  m.kind_ = Kind::mix;
  m.mix_ = std::make_shared<const MixNode>(MixNode{w1, w2, std::move(g1), std::move(g2)});
  return m;
}

ExtReal MarkerCandidate::operator()(const LPositiveSet& A, const Vec& bstar,
                                    const SolverConfig& cfg) const {
  switch (kind_) {
    case Kind::phi_conjugate_of: return phi_conjugate(A, bstar, cfg);
    case Kind::theta_of: return theta(A, bstar, cfg);
    case Kind::fn: return evaluate(*fn_, bstar);
    case Kind::grid: {
      for (std::size_t i = 0; i < grid_->points.size(); ++i)
        if ((grid_->points[i] - bstar).norm() <= 1e-9 * (1.0 + bstar.norm()))
          return grid_->values[i];
      throw Error("MarkerCandidate: grid marker evaluated off its grid");
    }
    case Kind::mix: {
      const ExtReal a = mix_->g1(A, bstar, cfg);
      const ExtReal b = mix_->g2(A, bstar, cfg);
      return mix_->w1 * a + mix_->w2 * b;
    }
  }
  throw Error("MarkerCandidate: bad kind");
}

MarkerVerdict is_marker(const LPositiveSet& A, const MarkerCandidate& g,
                        const std::vector<Vec>& dual_samples, const SolverConfig& cfg, double tol) {
  MarkerVerdict out;
  for (const Vec& bstar : dual_samples) {
    const ExtReal gv = g(A, bstar, cfg);
    const ExtReal upper = phi_conjugate(A, bstar, cfg);
    if (!(gv <= upper + tol)) {
      out.marker_on_grid = false;
      out.witness = bstar;
      out.violated = "upper";
      return out;
    }
    const ExtReal lower = theta(A, bstar, cfg);
    if (gv.is_finite() && lower.is_finite() && gv.value() < lower.value() - tol) {
      out.marker_on_grid = false;
      out.witness = bstar;
      out.violated = "lower";
      return out;
    }
    if (gv.is_finite() && lower.is_infinite()) {
      out.marker_on_grid = false;
      out.witness = bstar;
      out.violated = "lower";
      return out;
    }
  }
  return out;
}

DensityViaMarker density_via_marker(const LPositiveSet& A, const MarkerCandidate& g,
                                    const std::vector<Vec>& dual_samples, const SolverConfig& cfg,
                                    double tol) {
  DensityViaMarker out;
  out.worst_margin = std::numeric_limits<double>::infinity();
  for (const Vec& bstar : dual_samples) {
    const ExtReal gv = g(A, bstar, cfg);
    if (gv.is_infinite()) continue;
    const SupResult s = s_function(A.space(), bstar, cfg);
    if (s.verdict == SupVerdict::infinite) {
      out.consistent = false;
      out.witness = bstar;
      return out;
    }
    const double margin = gv.value() - s.value;
    out.worst_margin = std::min(out.worst_margin, margin);
    if (margin < -tol) {
      out.consistent = false;
      out.witness = bstar;
      return out;
    }
  }
  return out;
}

ExtensionMembership extension_membership(const LPositiveSet& A, const Vec& bstar,
                                         const SolverConfig& cfg, double tol) {
  ExtensionMembership out;
  out.bstar = bstar;
  out.q_dual = q_form(dual_space(A.space()), bstar);
  try {
    out.phi_conj = phi_conjugate(A, bstar, cfg);
  } catch (const NoClosedForm&) {
    auto fitz = std::make_shared<const LPositiveSet>(A);
    const ConvexFn phi_fn = ConvexFn::fitzpatrick_of(fitz);
    out.phi_conj =
        legendre_oracle(phi_fn, bstar, GridSpec::cube(A.space().dim, 4.0 * (1.0 + bstar.norm()), 21, 6));
  }
  out.theta_val = theta(A, bstar, cfg);
  const bool member1 = out.phi_conj.is_finite() && std::abs(out.phi_conj.value() - out.q_dual) <= tol;
  const bool member2 = out.theta_val.is_finite() && std::abs(out.theta_val.value() - out.q_dual) <= tol;
  out.member = member1;
  out.routes_agree = member1 == member2;
  if (!out.routes_agree && out.phi_conj.is_finite() && out.theta_val.is_finite()) {
    // Tolerate a near-threshold split only within 10x tol.
    const double gap = std::abs(out.phi_conj.value() - out.theta_val.value());
    if (gap <= 10 * tol) out.routes_agree = true;
  }
  return out;
}

}  // namespace snmono
