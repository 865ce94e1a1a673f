#pragma once

#include "snmono/common.hpp"
#include "snmono/sn_space.hpp"

#include <optional>

namespace snmono {

// A linear subspace of R^n x R^n: columns of `basis` span it; the first n
// rows are the E block, the last n the E* block.
struct LinearRelation {
  int n = 0;
  Mat basis;  // 2n x m, orthonormal columns after make_relation
};

// Rank-revealing construction (tolerance 1e-10 on rank decisions).
LinearRelation make_relation(int n, const Mat& raw_basis);
LinearRelation graph_relation(const Mat& M);  // {(x, Mx)}

int relation_dim(const LinearRelation& A);
bool relation_contains(const LinearRelation& A, const Vec& v, double tol = 1e-8);
bool same_span(const LinearRelation& A, const LinearRelation& B, double tol = 1e-8);

// Polar subspace {b* : <A, b*> = 0} (coordinates of B* = E* x E**).
LinearRelation polar(const LinearRelation& A);

// Adjoint relation: (y**, y*) with <s, y*> = <s*, y**> for all (s, s*) in A;
// equivalently (y*, -y**) in polar(A).  Stored as (first block y**, second
// block y*).
LinearRelation adjoint(const LinearRelation& A);

// q >= 0 on span(A)?  Exact eigen test of the restricted duality form.
bool relation_monotone(const LinearRelation& A, double tol = 1e-10);

struct PolarSupResult {
  double max_form_eigenvalue = 0.0;  // max of s_L over the unit sphere of A^0
  bool quasidense = false;           // max <= 0
  int polar_dim = 0;
};
PolarSupResult sup_s_on_polar(const LinearRelation& A);

struct BrezisBrowderReport {
  bool quasidense = false;        // sup s_L(A^0) <= 0
  bool adjoint_monotone = false;
  bool adjoint_maximal = false;   // dimension criterion + extension probing
  bool consistent = false;        // the three verdicts agree
  bool maximality_routes_agree = true;
};
BrezisBrowderReport brezis_browder_check(const LinearRelation& A, const SolverConfig& cfg = {});

// Subdifferential of k = q_L + indicator(A):  Lb + A^0 on A, empty off A.
struct AffineSubspace {
  bool empty = true;
  Vec base;
  Mat directions;  // columns
};
AffineSubspace indicator_quadratic_subdiff(const LinearRelation& A, const SnSpace& space,
                                           const Vec& b, double tol = 1e-10);

}  // namespace snmono
