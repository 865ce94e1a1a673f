#include "snmono/linear_relations.hpp"

#include "snmono/linalg.hpp"

#include <cmath>

namespace snmono {

namespace {

constexpr double kRankTol = 1e-10;

// Duality-form matrix on R^{2n}: v'Qv = <v1, v2>.
Mat duality_form(int n) {
  Mat Q = Mat::Zero(2 * n, 2 * n);
  Q.topRightCorner(n, n) = 0.5 * Mat::Identity(n, n);
  Q.bottomLeftCorner(n, n) = 0.5 * Mat::Identity(n, n);
  return Q;
}

double restricted_form_max(const Mat& basis, int n) {
  if (basis.cols() == 0) return 0.0;
  const Mat F = basis.transpose() * duality_form(n) * basis;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (F + F.transpose()));
  return es.eigenvalues().maxCoeff();
}

double restricted_form_min(const Mat& basis, int n) {
  if (basis.cols() == 0) return 0.0;
  const Mat F = basis.transpose() * duality_form(n) * basis;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (F + F.transpose()));
  return es.eigenvalues().minCoeff();
}

}  // namespace

LinearRelation make_relation(int n, const Mat& raw_basis) {
  if (raw_basis.rows() != 2 * n) throw DimensionError("make_relation: basis must have 2n rows");
  LinearRelation A;
  A.n = n;
  A.basis = orthonormal_span(raw_basis, kRankTol);
  return A;
}

LinearRelation graph_relation(const Mat& M) {
  const int n = static_cast<int>(M.rows());
  Mat b(2 * n, n);
  b.topRows(n) = Mat::Identity(n, n);
  b.bottomRows(n) = M;
  return make_relation(n, b);
}

int relation_dim(const LinearRelation& A) { return static_cast<int>(A.basis.cols()); }

bool relation_contains(const LinearRelation& A, const Vec& v, double tol) {
  if (v.size() != 2 * A.n) throw DimensionError("relation_contains: dims");
  if (A.basis.cols() == 0) return v.norm() <= tol;
  return (v - A.basis * (A.basis.transpose() * v)).norm() <= tol * (1.0 + v.norm());
}

bool same_span(const LinearRelation& A, const LinearRelation& B, double tol) {
  if (A.n != B.n || relation_dim(A) != relation_dim(B)) return false;
  for (int j = 0; j < B.basis.cols(); ++j)
    if (!relation_contains(A, B.basis.col(j), tol)) return false;
  return true;
}

LinearRelation polar(const LinearRelation& A) {
  LinearRelation out;
  out.n = A.n;
  out.basis = orthonormal_complement(A.basis, 2 * A.n, kRankTol);
  return out;
}

LinearRelation adjoint(const LinearRelation& A) {
  // (y**, y*) in A^T  <=>  (y*, -y**) in A^0.  Map the polar basis (u, v)
  // to (-v, u).
  const LinearRelation pol = polar(A);
  const int n = A.n;
  Mat b(2 * n, pol.basis.cols());
  for (int j = 0; j < pol.basis.cols(); ++j) {
    b.col(j).head(n) = -pol.basis.col(j).tail(n);
    b.col(j).tail(n) = pol.basis.col(j).head(n);
  }
  LinearRelation out;
  out.n = n;
  out.basis = orthonormal_span(b, kRankTol);
  return out;
}

bool relation_monotone(const LinearRelation& A, double tol) {
  return restricted_form_min(A.basis, A.n) >= -tol;
}

PolarSupResult sup_s_on_polar(const LinearRelation& A) {
  const LinearRelation pol = polar(A);
  PolarSupResult out;
  out.polar_dim = relation_dim(pol);
  out.max_form_eigenvalue = restricted_form_max(pol.basis, A.n);
  out.quasidense = out.max_form_eigenvalue <= kRankTol;
  return out;
}

namespace {

// Can the monotone subspace spanned by `basis` absorb candidate c?  Needs
// q(c - a) >= 0 for every a in the span.
bool extends_subspace(const Mat& basis, int n, const Vec& c) {
  const Mat Q = duality_form(n);
  const double qc = c.dot(Q * c);
  if (qc < -1e-12) return false;
  if (basis.cols() == 0) return true;
  const Mat G = 2.0 * (basis.transpose() * Q * basis);  // q(a) = 0.5 a'(2Q)a
  const Vec v = 2.0 * (basis.transpose() * (Q * c));    // <c, (2Q) a>
  // inf over t of q(c) - v't + 0.5 t'Gt  >= 0?
  QuadSup qs = quadratic_sup(G, v);
  if (qs.value.is_infinite()) return false;  // unbounded decrease
  return qc - qs.value.value() >= -1e-10;
}

}  // namespace

BrezisBrowderReport brezis_browder_check(const LinearRelation& A, const SolverConfig& cfg) {
  if (!relation_monotone(A, 1e-10)) throw Error("brezis_browder_check: A must be monotone");
  BrezisBrowderReport rep;
  rep.quasidense = sup_s_on_polar(A).quasidense;
  const LinearRelation adj = adjoint(A);
  rep.adjoint_monotone = relation_monotone(adj, 1e-10);
  // Maximality of the adjoint: dimension criterion plus extension probing.
  const bool dim_maximal = rep.adjoint_monotone && relation_dim(adj) == A.n;
  bool probe_maximal = rep.adjoint_monotone;
  if (rep.adjoint_monotone) {
    Rng rng(cfg.seed);
    for (int k = 0; k < 32 && probe_maximal; ++k) {
      const Vec c = random_vec(rng, 2 * A.n, 2.0);
      if (relation_contains(adj, c, 1e-8)) continue;
      if (extends_subspace(adj.basis, A.n, c)) probe_maximal = false;
    }
  }
  rep.adjoint_maximal = dim_maximal;
  rep.maximality_routes_agree = (dim_maximal == probe_maximal);
  rep.consistent = (rep.quasidense == rep.adjoint_monotone) &&
                   (rep.adjoint_monotone == rep.adjoint_maximal);
  return rep;
}

AffineSubspace indicator_quadratic_subdiff(const LinearRelation& A, const SnSpace& space,
                                           const Vec& b, double tol) {
  if (space.dim != 2 * A.n) throw DimensionError("indicator_quadratic_subdiff: space dim");
  AffineSubspace out;
  if (!relation_contains(A, b, tol)) return out;  // empty off A
  out.empty = false;
  out.base = space.L * b;
  out.directions = polar(A).basis;
  return out;
}

}  // namespace snmono
