#pragma once

#include "snmono/common.hpp"
#include "snmono/ext_real.hpp"

namespace snmono {

// Orthonormal basis of the column span (rank decided at `tol` relative to
// the largest singular value).
Mat orthonormal_span(const Mat& raw, double tol = 1e-10);

// Orthonormal basis of the orthogonal complement of span(basis).
Mat orthonormal_complement(const Mat& basis, int ambient_dim, double tol = 1e-10);

// sup over t of  v't - 0.5 t'Gt  for symmetric G.
// Finite (= 0.5 v'G^+ v, attained) iff G is PSD on the directions where v
// lives; +inf when v has a component along a null direction or G has a
// negative eigenvalue.
struct QuadSup {
  ExtReal value;
  Vec arg;  // maximizer when finite
};
QuadSup quadratic_sup(const Mat& G, const Vec& v, double tol = 1e-10);

// inf over t of 0.5 t'Gt - v't for G PSD: negative of quadratic_sup, kept
// for readability at call sites.  minus_infinity when unbounded below.
struct QuadInf {
  bool minus_infinity = false;
  double value = 0.0;
  Vec arg;
};
QuadInf quadratic_inf(const Mat& G, const Vec& v, double tol = 1e-10);

// min 0.5 w'Hw + g'w  subject to  E w = d  (H PSD, KKT solve).
struct EqQp {
  bool feasible = true;
  double value = 0.0;
  Vec w;
};
EqQp qp_equality_min(const Mat& H, const Vec& g, const Mat& E, const Vec& d, double tol = 1e-10);

}  // namespace snmono
