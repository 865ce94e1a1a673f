#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "snmono/alignment.hpp"
#include "snmono/fitzpatrick.hpp"
#include "snmono/linear_relations.hpp"
#include "snmono/mono_ops.hpp"
#include "snmono/positive_sets.hpp"
#include "snmono/serialize.hpp"
#include "snmono/touching.hpp"

namespace py = pybind11;
using namespace snmono;

namespace {

NormKind norm_by_name(const std::string& name) {
  if (name == "euclidean") return NormKind::euclidean();
  if (name == "ell1") return NormKind::ell1();
  if (name == "ellinf") return NormKind::ellinf();
  throw Error("unknown norm '" + name + "' (use euclidean|ell1|ellinf)");
}

double ext_to_py(const ExtReal& v) {
  return v.is_infinite() ? std::numeric_limits<double>::infinity() : v.value();
}

}  // namespace

PYBIND11_MODULE(_snmono, m) {
  m.doc() = "SN spaces, L-positive sets, Fitzpatrick functions and quasidensity certification";

  py::class_<SnSpace>(m, "SnSpace")
      .def(py::init([](int dim, const std::string& norm, const Mat& L) {
             SnSpace s;
             s.dim = dim;
             s.norm = norm_by_name(norm);
             s.L = L;
             return s;
           }),
           py::arg("dim"), py::arg("norm"), py::arg("L"))
      .def_readonly("dim", &SnSpace::dim)
      .def_property_readonly("L", [](const SnSpace& s) { return s.L; })
      .def("__repr__", [](const SnSpace& s) {
        return "SnSpace(dim=" + std::to_string(s.dim) + ", norm=" + s.norm.name() + ")";
      });

  m.def("product_space", [](int n, const std::string& base) { return product_space(n, norm_by_name(base)); },
        py::arg("n"), py::arg("base") = "euclidean");
  m.def("scaled_hilbert_space", &scaled_hilbert_space, py::arg("dim"), py::arg("lambda_"),
        py::arg("sign") = 1);
  m.def("swap12_space", &swap12_space, py::arg("lambda_"));

  m.def("validate_sn", [](const SnSpace& s) {
    const ValidationReport r = validate_sn(s);
    py::dict d;
    d["ok"] = r.ok;
    d["violation"] = r.violation;
    d["measured"] = r.measured;
    return d;
  });
  m.def("q_form", &q_form, py::arg("space"), py::arg("b"));
  m.def("r_form", &r_form, py::arg("space"), py::arg("b"));
  m.def("s_function", [](const SnSpace& s, const Vec& bstar) {
    const SupResult r = s_function(s, bstar);
    py::dict d;
    d["verdict"] = r.verdict == SupVerdict::finite ? "finite"
                   : r.verdict == SupVerdict::infinite ? "infinite" : "unknown";
    d["value"] = r.value;
    d["heuristic"] = r.heuristic;
    return d;
  });
  m.def("dual_space", &dual_space);

  py::class_<ConvexFn>(m, "ConvexFn")
      .def_property_readonly("dim", &ConvexFn::dim)
      .def("__call__", [](const ConvexFn& f, const Vec& x) { return ext_to_py(evaluate(f, x)); })
      .def("conjugate", [](const ConvexFn& f, const Vec& y) { return ext_to_py(conjugate(f, y)); })
      .def("prox", [](const ConvexFn& f, const Vec& p, double w) { return prox(f, p, w); },
           py::arg("p"), py::arg("weight") = 1.0);
  m.def("quadratic_fn", [](const Mat& Q, const Vec& b, double c) { return ConvexFn::quadratic(Q, b, c); },
        py::arg("Q"), py::arg("b"), py::arg("c") = 0.0);
  m.def("half_sq_fn", &ConvexFn::half_sq, py::arg("dim"));
  m.def("abs_fn", &ConvexFn::abs_value, py::arg("alpha") = 1.0);
  m.def("box_indicator_fn", [](const Vec& lo, const Vec& hi) { return ConvexFn::indicator_box(lo, hi); });

  py::class_<LPositiveSet>(m, "LPositiveSet")
      .def("contains", [](const LPositiveSet& A, const Vec& b) { return A.contains(b); })
      .def("sample", [](const LPositiveSet& A, int count, std::uint64_t seed) { return A.sample(count, seed); },
           py::arg("count"), py::arg("seed") = 1);
  m.def("operator_graph_set", [](const Mat& M) { return operator_graph_set(static_cast<int>(M.rows()), M); });
  m.def("subdiff_graph_set", &subdiff_graph_set);
  m.def("cloud_set", [](int n, const std::vector<Vec>& pts) {
    return cloud_set(product_space(n), std::vector<Vec>(pts));
  });
  m.def("sequence_set", [](const std::string& kind, int trunc, double lambda, double mu) {
          SeqKind k = kind == "tail" ? SeqKind::tail : (kind == "head" ? SeqKind::head : SeqKind::combo);
          return sequence_set(k, trunc, lambda, mu);
        },
        py::arg("kind"), py::arg("trunc"), py::arg("lambda_") = 1.0, py::arg("mu") = 0.0);

  m.def("is_L_positive", [](const LPositiveSet& A) {
    const PositivityResult r = is_L_positive(A);
    py::dict d;
    d["ok"] = r.ok;
    d["min_q"] = r.min_q;
    return d;
  });
  m.def("density_gap", [](const LPositiveSet& A, const Vec& c) {
    const GapResult g = density_gap(A, c);
    py::dict d;
    d["gap"] = g.gap;
    d["minimizer"] = g.minimizer;
    d["exact"] = g.exact;
    return d;
  });
  m.def("certify_quasidense", [](const LPositiveSet& A, const std::vector<Vec>& probes, double tol) {
          const GapCertificate cert = certify_quasidense(A, probes, SolverConfig{}, tol);
          py::dict d;
          d["verdict"] = cert.verdict == DensityVerdict::quasidense_on_grid ? "quasidense-on-grid"
                         : cert.verdict == DensityVerdict::refuted ? "refuted"
                                                                   : "no-gap-found-within-budget";
          d["bound"] = cert.refutation_bound;
          return d;
        },
        py::arg("set"), py::arg("probes"), py::arg("tol") = 1e-6);

  m.def("phi", [](const LPositiveSet& A, const Vec& b) { return ext_to_py(phi(A, b)); });
  m.def("theta", [](const LPositiveSet& A, const Vec& bstar) { return ext_to_py(theta(A, bstar)); });
  m.def("phi_conjugate", [](const LPositiveSet& A, const Vec& b) { return ext_to_py(phi_conjugate(A, b)); });
  m.def("extension_member", [](const LPositiveSet& A, const Vec& bstar) {
    const ExtensionMembership r = extension_membership(A, bstar);
    py::dict d;
    d["member"] = r.member;
    d["routes_agree"] = r.routes_agree;
    d["q_dual"] = r.q_dual;
    return d;
  });

  py::class_<MonoMap>(m, "MonoMap")
      .def_property_readonly("n", &MonoMap::domain_dim)
      .def("graph_set", &MonoMap::graph_set)
      .def("contains", [](const MonoMap& S, const Vec& x, const Vec& xs) { return S.graph_contains(x, xs); });
  m.def("linear_map", [](const Mat& M) { return MonoMap::linear(M); });
  m.def("identity_map", &MonoMap::identity, py::arg("n"));
  m.def("subdiff_map", &MonoMap::subdiff);
  m.def("op_sum", [](const MonoMap& S, const MonoMap& T) { return op_sum(S, T); });
  m.def("parallel_sum", [](const MonoMap& S, const MonoMap& T) { return parallel_sum(S, T); });
  m.def("resolvent_gap", [](const MonoMap& S, const Vec& w, const Vec& ws) {
    const ResolventGap g = resolvent_gap_oracle(S, w, ws);
    py::dict d;
    d["gap"] = g.gap;
    d["s"] = g.s;
    d["sstar"] = g.sstar;
    return d;
  });
  m.def("tail_apply", &tail_apply);
  m.def("head_apply", &head_apply);
  m.def("combo_apply", &combo_apply, py::arg("lambda_"), py::arg("mu"), py::arg("x"));

  m.def("alignment_tau", [](const MonoMap& S, const Vec& w, const Vec& ws, double alpha, double beta) {
          const AlignmentResult r = alignment_tau(S, w, ws, alpha, beta);
          py::dict d;
          d["tau"] = r.tau;
          d["spread"] = r.spread;
          d["s"] = r.s;
          d["sstar"] = r.sstar;
          return d;
        },
        py::arg("S"), py::arg("w"), py::arg("wstar"), py::arg("alpha") = 1.0, py::arg("beta") = 1.0);

  py::class_<LinearRelation>(m, "LinearRelation")
      .def_readonly("n", &LinearRelation::n)
      .def_property_readonly("basis", [](const LinearRelation& A) { return A.basis; });
  m.def("make_relation", &make_relation, py::arg("n"), py::arg("basis"));
  m.def("graph_relation", &graph_relation);
  m.def("polar", &polar);
  m.def("adjoint", &adjoint);
  m.def("relation_monotone", [](const LinearRelation& A) { return relation_monotone(A); });
  m.def("sup_s_on_polar", [](const LinearRelation& A) {
    const PolarSupResult r = sup_s_on_polar(A);
    py::dict d;
    d["max_form_eigenvalue"] = r.max_form_eigenvalue;
    d["quasidense"] = r.quasidense;
    return d;
  });
  m.def("brezis_browder_check", [](const LinearRelation& A) {
    const BrezisBrowderReport r = brezis_browder_check(A);
    py::dict d;
    d["quasidense"] = r.quasidense;
    d["adjoint_monotone"] = r.adjoint_monotone;
    d["adjoint_maximal"] = r.adjoint_maximal;
    d["consistent"] = r.consistent;
    return d;
  });

  m.def("zagrodny_slack", [](const LPositiveSet& A, const Vec& a, const Vec& b) {
    return zagrodny_slack(A, a, b);
  });
}
