#include "snmono/linalg.hpp"

namespace snmono {

Mat orthonormal_span(const Mat& raw, double tol) {
  if (raw.cols() == 0) return Mat(raw.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(raw, Eigen::ComputeThinU);
  const Vec sv = svd.singularValues();
  const double cutoff = (sv.size() ? sv[0] : 0.0) * tol;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff && sv[i] > tol) ++rank;
  return svd.matrixU().leftCols(rank);
}

Mat orthonormal_complement(const Mat& basis, int ambient_dim, double tol) {
  if (basis.cols() == 0) return Mat::Identity(ambient_dim, ambient_dim);
  const Mat B = orthonormal_span(basis, tol);
  const Mat P = Mat::Identity(ambient_dim, ambient_dim) - B * B.transpose();
  Eigen::SelfAdjointEigenSolver<Mat> es(P);
  // Eigenvalues of a projector are 0/1; keep the 1-eigenvectors.
  int count = 0;
  for (int i = 0; i < ambient_dim; ++i)
    if (es.eigenvalues()[i] > 0.5) ++count;
  Mat out(ambient_dim, count);
  int j = 0;
  for (int i = 0; i < ambient_dim; ++i)
    if (es.eigenvalues()[i] > 0.5) out.col(j++) = es.eigenvectors().col(i);
  return out;
}

QuadSup quadratic_sup(const Mat& G, const Vec& v, double tol) {
  const int m = static_cast<int>(G.rows());
  if (m == 0) return {ExtReal(0.0), Vec(0)};
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (G + G.transpose()));
  const Vec lam = es.eigenvalues();
  const Vec vh = es.eigenvectors().transpose() * v;
  const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  const double vscale = std::max(1.0, v.norm());
  double value = 0.0;
  Vec coeff = Vec::Zero(m);
  for (int i = 0; i < m; ++i) {
    if (lam[i] > scale * tol) {
      value += 0.5 * vh[i] * vh[i] / lam[i];
      coeff[i] = vh[i] / lam[i];
    } else if (lam[i] >= -scale * tol) {
      if (std::abs(vh[i]) > vscale * 1e-8) return {ExtReal::infinity(), Vec()};
    } else {
      return {ExtReal::infinity(), Vec()};
    }
  }
  return {ExtReal(value), es.eigenvectors() * coeff};
}

QuadInf quadratic_inf(const Mat& G, const Vec& v, double tol) {
  QuadSup s = quadratic_sup(G, v, tol);
  QuadInf out;
  if (s.value.is_infinite()) {
    out.minus_infinity = true;
    return out;
  }
  out.value = -s.value.value();
  out.arg = s.arg;
  return out;
}

EqQp qp_equality_min(const Mat& H, const Vec& g, const Mat& E, const Vec& d, double tol) {
  const int n = static_cast<int>(H.rows());
  const int m = static_cast<int>(E.rows());
  EqQp out;
  if (m == 0) {
    QuadInf qi = quadratic_inf(H, -g, tol);
    if (qi.minus_infinity) throw Error("qp_equality_min: unbounded below");
    out.value = qi.value;
    out.w = qi.arg;
    return out;
  }
  // Feasibility first: least-squares solution of E w = d.
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(E);
  const Vec w0 = cod.solve(d);
  if ((E * w0 - d).norm() > tol * (1.0 + d.norm())) {
    out.feasible = false;
    return out;
  }
  // Minimize over w0 + null(E).
  const Mat N = orthonormal_complement(E.transpose(), n, tol);
  if (N.cols() == 0) {
    out.w = w0;
    out.value = 0.5 * w0.dot(H * w0) + g.dot(w0);
    return out;
  }
  const Mat Hn = N.transpose() * H * N;
  const Vec gn = N.transpose() * (H * w0 + g);
  QuadInf qi = quadratic_inf(Hn, -gn, tol);
  if (qi.minus_infinity) throw Error("qp_equality_min: unbounded below on feasible set");
  out.w = w0 + N * qi.arg;
  out.value = 0.5 * out.w.dot(H * out.w) + g.dot(out.w);
  return out;
}

}  // namespace snmono
