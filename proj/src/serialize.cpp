#include "snmono/serialize.hpp"

#include <charconv>
#include <cmath>

namespace snmono {

namespace {

Json mat_to_json(const Mat& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  j["data"] = std::move(data);
  return j;
}

Mat mat_from_json(const Json& j) {
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  const auto& data = j.at("data");
  if (static_cast<int>(data.size()) != rows * cols) throw Error("matrix json: size mismatch");
  Mat m(rows, cols);
  int k = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = data[k++].get<double>();
  return m;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf, ptr);
}

Json vec_to_json(const Vec& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

Vec vec_from_json(const Json& j) {
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

Json norm_to_json(const NormKind& k) {
  switch (k.tag()) {
    case NormTag::euclidean: return "euclidean";
    case NormTag::ell1: return "ell1";
    case NormTag::ellinf: return "ellinf";
    case NormTag::product: {
      Json j;
      j["product"] = Json::array({norm_to_json(k.first()), norm_to_json(k.second())});
      return j;
    }
  }
  throw Error("norm_to_json: bad tag");
}

NormKind norm_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "euclidean") return NormKind::euclidean();
    if (s == "ell1") return NormKind::ell1();
    if (s == "ellinf") return NormKind::ellinf();
    throw Error("norm_from_json: unknown norm '" + s + "'");
  }
  if (j.is_object() && j.contains("product"))
    return NormKind::product(norm_from_json(j["product"].at(0)), norm_from_json(j["product"].at(1)));
  throw Error("norm_from_json: bad norm json");
}

Json space_to_json(const SnSpace& s) {
  Json j;
  j["dim"] = s.dim;
  j["norm"] = norm_to_json(s.norm);
  Json L = Json::array();
  for (int r = 0; r < s.dim; ++r)
    for (int c = 0; c < s.dim; ++c) L.push_back(s.L(r, c));
  j["L"] = std::move(L);
  return j;
}

SnSpace space_from_json(const Json& j) {
  SnSpace s;
  s.dim = j.at("dim").get<int>();
  if (s.dim < 1) throw Error("space json: dim must be >= 1");
  s.norm = norm_from_json(j.at("norm"));
  const auto& L = j.at("L");
  if (static_cast<int>(L.size()) != s.dim * s.dim) throw Error("space json: L size mismatch");
  s.L.resize(s.dim, s.dim);
  int k = 0;
  for (int r = 0; r < s.dim; ++r)
    for (int c = 0; c < s.dim; ++c) s.L(r, c) = L[k++].get<double>();
  return s;
}

Json convex_fn_to_json(const ConvexFn& f) {
  Json j;
  std::visit(
      [&](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, Quadratic>) {
          j["family"] = "quadratic";
          j["Q"] = mat_to_json(fam.Q);
          j["b"] = vec_to_json(fam.b);
          j["c"] = fam.c;
        } else if constexpr (std::is_same_v<T, IndicatorBox>) {
          j["family"] = "indicator_box";
          j["lo"] = vec_to_json(fam.lo);
          j["hi"] = vec_to_json(fam.hi);
        } else if constexpr (std::is_same_v<T, IndicatorSubspace>) {
          j["family"] = "indicator_subspace";
          j["basis"] = mat_to_json(fam.basis);
        } else if constexpr (std::is_same_v<T, NormPower>) {
          j["family"] = "norm_power";
          j["alpha"] = fam.alpha;
          j["p"] = fam.p;
          j["base"] = norm_to_json(fam.base);
          j["dim"] = fam.dim;
        } else if constexpr (std::is_same_v<T, SumOf>) {
          j["family"] = "sum";
          Json terms = Json::array();
          for (const ConvexFn& t : fam.terms) terms.push_back(convex_fn_to_json(t));
          j["terms"] = std::move(terms);
        } else if constexpr (std::is_same_v<T, SeparablePair>) {
          j["family"] = "separable_pair";
          j["k"] = convex_fn_to_json(*fam.k);
        } else {
          j["family"] = "fitzpatrick_of";
          j["set"] = set_to_json(*fam.set);
        }
      },
      f.family());
  return j;
}

ConvexFn convex_fn_from_json(const Json& j) {
  const std::string fam = j.at("family").get<std::string>();
  if (fam == "quadratic")
    return ConvexFn::quadratic(mat_from_json(j.at("Q")), vec_from_json(j.at("b")),
                               j.value("c", 0.0));
  if (fam == "indicator_box")
    return ConvexFn::indicator_box(vec_from_json(j.at("lo")), vec_from_json(j.at("hi")));
  if (fam == "indicator_subspace") return ConvexFn::indicator_subspace(mat_from_json(j.at("basis")));
  if (fam == "norm_power")
    return ConvexFn::norm_power(j.at("dim").get<int>(), j.at("alpha").get<double>(),
                                j.at("p").get<int>(), norm_from_json(j.at("base")));
  if (fam == "sum") {
    std::vector<ConvexFn> terms;
    for (const auto& t : j.at("terms")) terms.push_back(convex_fn_from_json(t));
    return ConvexFn::sum(std::move(terms));
  }
  if (fam == "separable_pair") return ConvexFn::separable_pair(convex_fn_from_json(j.at("k")));
  if (fam == "fitzpatrick_of")
    return ConvexFn::fitzpatrick_of(std::make_shared<const LPositiveSet>(set_from_json(j.at("set"))));
  throw Error("convex_fn_from_json: unknown family '" + fam + "'");
}

Json set_to_json(const LPositiveSet& A) {
  Json j;
  j["space"] = space_to_json(A.space());
  Json rep;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, FiniteCloud>) {
          rep["kind"] = "finite_cloud";
          Json pts = Json::array();
          for (const Vec& p : r.points) pts.push_back(vec_to_json(p));
          rep["points"] = std::move(pts);
        } else if constexpr (std::is_same_v<T, LinearSubspaceRep>) {
          rep["kind"] = "linear_subspace";
          rep["basis"] = mat_to_json(r.basis);
        } else if constexpr (std::is_same_v<T, OperatorGraphRep>) {
          rep["kind"] = "operator_graph";
          rep["M"] = mat_to_json(r.M);
          if (r.offset.size()) rep["offset"] = vec_to_json(r.offset);
        } else if constexpr (std::is_same_v<T, SubdiffGraphRep>) {
          rep["kind"] = "subdiff_graph";
          rep["k"] = convex_fn_to_json(r.k);
        } else {
          rep["kind"] = "sequence_operator";
          rep["op"] = r.kind == SeqKind::tail ? "tail" : (r.kind == SeqKind::head ? "head" : "combo");
          rep["lambda"] = r.lambda;
          rep["mu"] = r.mu;
          rep["N"] = r.trunc;
        }
      },
      A.rep());
  j["rep"] = std::move(rep);
  return j;
}

LPositiveSet set_from_json(const Json& j) {
  SnSpace space = space_from_json(j.at("space"));
  const Json& rep = j.at("rep");
  const std::string kind = rep.at("kind").get<std::string>();
  if (kind == "finite_cloud") {
    std::vector<Vec> pts;
    for (const auto& p : rep.at("points")) pts.push_back(vec_from_json(p));
    return LPositiveSet(std::move(space), FiniteCloud{std::move(pts)});
  }
  if (kind == "linear_subspace")
    return LPositiveSet(std::move(space), LinearSubspaceRep{mat_from_json(rep.at("basis"))});
  if (kind == "operator_graph") {
    Vec off;
    if (rep.contains("offset")) off = vec_from_json(rep["offset"]);
    return LPositiveSet(std::move(space), OperatorGraphRep{mat_from_json(rep.at("M")), std::move(off)});
  }
  if (kind == "subdiff_graph")
    return LPositiveSet(std::move(space), SubdiffGraphRep{convex_fn_from_json(rep.at("k"))});
  if (kind == "sequence_operator") {
    const std::string op = rep.at("op").get<std::string>();
    SeqKind sk = op == "tail" ? SeqKind::tail : (op == "head" ? SeqKind::head : SeqKind::combo);
    return LPositiveSet(std::move(space), SequenceOperatorRep{sk, rep.value("lambda", 1.0),
                                                              rep.value("mu", 0.0),
                                                              rep.at("N").get<int>()});
  }
  throw Error("set_from_json: unknown kind '" + kind + "'");
}

Json mono_map_to_json(const MonoMap& S) {
  Json j;
  j["n"] = S.domain_dim();
  Json rep;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, FiniteGraphRep>) {
          rep["kind"] = "finite_graph";
          Json pairs = Json::array();
          for (const auto& [x, xs] : r.pairs)
            pairs.push_back(Json::array({vec_to_json(x), vec_to_json(xs)}));
          rep["pairs"] = std::move(pairs);
        } else if constexpr (std::is_same_v<T, LinearMapRep>) {
          rep["kind"] = "linear";
          rep["M"] = mat_to_json(r.M);
        } else if constexpr (std::is_same_v<T, SubdiffRep>) {
          rep["kind"] = "subdiff";
          rep["k"] = convex_fn_to_json(r.k);
        } else {
          rep["kind"] = "sequence";
          rep["op"] = r.kind == SeqKind::tail ? "tail" : (r.kind == SeqKind::head ? "head" : "combo");
          rep["lambda"] = r.lambda;
          rep["mu"] = r.mu;
          rep["N"] = r.trunc;
        }
      },
      S.rep());
  j["rep"] = std::move(rep);
  return j;
}

MonoMap mono_map_from_json(const Json& j) {
  const Json& rep = j.at("rep");
  const std::string kind = rep.at("kind").get<std::string>();
  if (kind == "finite_graph") {
    std::vector<std::pair<Vec, Vec>> pairs;
    for (const auto& p : rep.at("pairs"))
      pairs.emplace_back(vec_from_json(p.at(0)), vec_from_json(p.at(1)));
    return MonoMap::finite_graph(std::move(pairs));
  }
  if (kind == "linear") return MonoMap::linear(mat_from_json(rep.at("M")));
  if (kind == "subdiff") return MonoMap::subdiff(convex_fn_from_json(rep.at("k")));
  if (kind == "sequence") {
    const std::string op = rep.at("op").get<std::string>();
    SeqKind sk = op == "tail" ? SeqKind::tail : (op == "head" ? SeqKind::head : SeqKind::combo);
    return MonoMap::sequence(sk, rep.at("N").get<int>(), rep.value("lambda", 1.0),
                             rep.value("mu", 0.0));
  }
  throw Error("mono_map_from_json: unknown kind '" + kind + "'");
}

Json relation_to_json(const LinearRelation& A) {
  Json j;
  j["n"] = A.n;
  j["cols"] = A.basis.cols();
  Json data = Json::array();
  for (Eigen::Index c = 0; c < A.basis.cols(); ++c)
    for (Eigen::Index r = 0; r < A.basis.rows(); ++r) data.push_back(A.basis(r, c));
  j["basis"] = std::move(data);
  return j;
}

LinearRelation relation_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  const int cols = j.at("cols").get<int>();
  const auto& data = j.at("basis");
  if (static_cast<int>(data.size()) != 2 * n * cols) throw Error("relation json: basis size");
  Mat b(2 * n, cols);
  int k = 0;
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < 2 * n; ++r) b(r, c) = data[k++].get<double>();
  return make_relation(n, b);
}

Json certificate_to_json(const GapCertificate& cert) {
  Json j;
  switch (cert.verdict) {
    case DensityVerdict::quasidense_on_grid: j["verdict"] = "quasidense-on-grid"; break;
    case DensityVerdict::refuted: j["verdict"] = "refuted"; break;
    case DensityVerdict::no_gap_found_within_budget: j["verdict"] = "no-gap-found-within-budget"; break;
  }
  j["tol"] = cert.tol;
  if (cert.witness) j["witness"] = vec_to_json(*cert.witness);
  if (cert.verdict == DensityVerdict::refuted) j["bound"] = cert.refutation_bound;
  Json probes = Json::array();
  for (const ProbeRecord& p : cert.probes) {
    Json r;
    r["probe"] = vec_to_json(p.probe);
    r["gap"] = p.gap;
    r["minimizer"] = vec_to_json(p.minimizer);
    r["exact"] = p.exact;
    probes.push_back(std::move(r));
  }
  j["probes"] = std::move(probes);
  return j;
}

std::string certificate_to_csv(const GapCertificate& cert) {
  std::string out;
  if (cert.probes.empty()) return out;
  const int d = static_cast<int>(cert.probes.front().probe.size());
  for (int i = 0; i < d; ++i) out += "p" + std::to_string(i) + ",";
  out += "gap\n";
  for (const ProbeRecord& p : cert.probes) {
    for (int i = 0; i < d; ++i) out += format_double(p.probe[i]) + ",";
    out += format_double(p.gap) + "\n";
  }
  return out;
}

std::string sampled_graph_csv(const MonoMap& S, int count, std::uint64_t seed) {
  const int n = S.domain_dim();
  std::string out;
  for (int i = 0; i < n; ++i) out += "x" + std::to_string(i) + ",";
  for (int i = 0; i < n; ++i) out += "xs" + std::to_string(i) + (i + 1 < n ? "," : "\n");
  for (const auto& [x, xs] : S.sample_graph(count, seed)) {
    for (int i = 0; i < n; ++i) out += format_double(x[i]) + ",";
    for (int i = 0; i < n; ++i) out += format_double(xs[i]) + (i + 1 < n ? "," : "\n");
  }
  return out;
}

Json alignment_to_json(const AlignmentResult& r) {
  Json j;
  j["tau"] = r.tau;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["spread"] = r.spread;
  j["restarts"] = r.restarts;
  j["budget_exhausted"] = r.budget_exhausted;
  Json w;
  w["s"] = vec_to_json(r.s);
  w["sstar"] = vec_to_json(r.sstar);
  w["dist_x"] = r.dist_x;
  w["dist_xstar"] = r.dist_xstar;
  w["inner"] = r.inner;
  j["witness"] = std::move(w);
  return j;
}

}  // namespace snmono
