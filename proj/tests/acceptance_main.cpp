// Acceptance suite: one line per criterion, exit 0 iff all pass.

#include "snmono/alignment.hpp"
#include "snmono/fitzpatrick.hpp"
#include "snmono/linear_relations.hpp"
#include "snmono/mono_ops.hpp"
#include "snmono/positive_sets.hpp"
#include "snmono/serialize.hpp"
#include "snmono/touching.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace snmono;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %-34s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) { return format_double(v); }

Vec v1(double a) {
  Vec v(1);
  v[0] = a;
  return v;
}

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

// --- 1: tail-operator bound -------------------------------------------------

void criterion_tail_bound() {
  const int N = 200;
  const SequenceOperatorRep rep{SeqKind::tail, 1.0, 0.0, N};
  SolverConfig cfg;
  cfg.seed = 7;
  cfg.restarts = 50;
  cfg.max_iters = 1200;
  const SeqGapResult r = seq_gap_minimize(rep, Vec::Zero(N), Vec::Ones(N), 1.0, cfg);
  const bool lower = r.lowest_seen >= 0.25 - 1e-9;
  const bool upper = r.best <= 0.26;
  report(1, "tail-operator bound", lower && upper,
         "lowest=" + fmt(r.lowest_seen) + " best=" + fmt(r.best) + " (need >=0.25-1e-9, best<=0.26)");
}

// --- 2: s-function equals the duality product --------------------------------

void criterion_s_function() {
  double worst = 0.0;
  Rng rng(11);
  for (int n = 1; n <= 5; ++n) {
    const SnSpace sp = product_space(n);
    for (int i = 0; i < 20; ++i) {
      const Vec bs = random_vec(rng, 2 * n, 1.5);
      const SupResult s = s_function(sp, bs);
      if (s.verdict != SupVerdict::finite) {
        worst = 1.0;
        break;
      }
      worst = std::max(worst, std::abs(s.value - bs.head(n).dot(bs.tail(n))));
    }
  }
  report(2, "dual pairing form of s", worst <= 1e-6, "max |s - <x*,x**>| = " + fmt(worst));
}

// --- 3: closed forms of the canned spaces -------------------------------------

void criterion_closed_forms() {
  double worst = 0.0;
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const double lam = random_uniform(rng, 0.1, 1.0);
    // (a) L = lam I: r = 0.5(1+lam)|b|^2.
    {
      const SnSpace s = scaled_hilbert_space(3, lam, +1);
      const Vec b = random_vec(rng, 3);
      worst = std::max(worst, std::abs(r_form(s, b) - 0.5 * (1 + lam) * b.squaredNorm()));
    }
    // (b) L = -lam I: r = 0.5(1-lam)|b|^2.
    {
      const SnSpace s = scaled_hilbert_space(3, lam, -1);
      const Vec b = random_vec(rng, 3);
      worst = std::max(worst, std::abs(r_form(s, b) - 0.5 * (1 - lam) * b.squaredNorm()));
    }
    // (c) coordinate swap: closed form of the three-term sum.
    {
      const SnSpace s = swap12_space(lam);
      const Vec b = random_vec(rng, 3);
      const double closed =
          0.5 * (b[0] * b[0] + 2 * lam * b[0] * b[1] + b[1] * b[1] + (1 + lam) * b[2] * b[2]);
      worst = std::max(worst, std::abs(r_form(s, b) - closed));
    }
    // s on the scaled Hilbert space: |b*|^2 / (2 lam).
    {
      const SnSpace s = scaled_hilbert_space(3, lam, +1);
      const Vec bs = random_vec(rng, 3);
      const SupResult r = s_function(s, bs);
      if (r.verdict != SupVerdict::finite)
        worst = 1.0;
      else
        worst = std::max(worst, std::abs(r.value - 0.5 * bs.squaredNorm() / lam));
    }
  }
  report(3, "canned closed forms", worst <= 1e-10, "max deviation = " + fmt(worst));
}

// --- 4: head-tail identity and the tail lower bound ----------------------------

void criterion_head_tail() {
  const int N = 100;
  Rng rng(17);
  double worst_id = 0.0, worst_lb = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Vec x = Vec::Zero(N);
    const int supp = 1 + static_cast<int>(rng() % N);
    for (int j = 0; j < supp; ++j) x[rng() % N] = random_uniform(rng, -1.0, 1.0);
    const Vec tx = tail_apply(x), hx = head_apply(x);
    worst_id = std::max(worst_id, std::abs(x.dot(hx) - x.dot(tx)));
    const double sigma = x.sum();
    worst_lb = std::max(worst_lb, 0.5 * sigma * sigma - x.dot(tx));
  }
  report(4, "head-tail identities", worst_id <= 1e-12 && worst_lb <= 1e-12,
         "max |<x,Hx>-<x,Tx>| = " + fmt(worst_id) + ", max (s^2/2 - <x,Tx>) = " + fmt(worst_lb));
}

// --- 5: oracle equivalence on random linear relations ---------------------------

LinearRelation random_monotone_relation(Rng& rng, int n) {
  while (true) {
    Mat M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = random_uniform(rng, -1.0, 1.0);
    M += (1.0 + random_uniform(rng, 0.0, static_cast<double>(n))) * Mat::Identity(n, n);
    const int kind = static_cast<int>(rng() % 3);
    Mat basis;
    if (kind == 0) {
      basis.resize(2 * n, n);
      basis.topRows(n) = Mat::Identity(n, n);
      basis.bottomRows(n) = M;
    } else if (kind == 1) {
      const int d = 1 + static_cast<int>(rng() % n);
      Mat V(n, d);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) V(i, j) = random_uniform(rng, -1.0, 1.0);
      basis.resize(2 * n, d);
      basis.topRows(n) = V;
      basis.bottomRows(n) = M * V;
    } else {
      const Mat skew = M - M.transpose();
      basis.resize(2 * n, n);
      basis.topRows(n) = Mat::Identity(n, n);
      basis.bottomRows(n) = skew;
    }
    const LinearRelation A = make_relation(n, basis);
    if (relation_monotone(A, 1e-12)) return A;
  }
}

void criterion_relation_oracles() {
  const int n = 3;
  Rng rng(19);
  int disagreements = 0, quasidense_count = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const LinearRelation A = random_monotone_relation(rng, n);
    const bool eigen_verdict = sup_s_on_polar(A).quasidense;
    const BrezisBrowderReport bb = brezis_browder_check(A);
    const LPositiveSet set(product_space(n), LinearSubspaceRep{A.basis});
    std::vector<Vec> probes;
    probes.push_back(Vec::Zero(2 * n));
    for (int i = 0; i < 24; ++i) probes.push_back(random_vec(rng, 2 * n, 1.5));
    const bool grid_verdict =
        certify_quasidense(set, probes, SolverConfig{}, 1e-7).verdict ==
        DensityVerdict::quasidense_on_grid;
    if (eigen_verdict != grid_verdict || eigen_verdict != bb.adjoint_monotone) ++disagreements;
    if (eigen_verdict) ++quasidense_count;
  }
  report(5, "relation oracle equivalence", disagreements == 0,
         "disagreements=" + std::to_string(disagreements) + "/200 (quasidense " +
             std::to_string(quasidense_count) + ", refuted " +
             std::to_string(200 - quasidense_count) + ")");
}

// --- 6: Fitzpatrick closed form and coincidence set ------------------------------

void criterion_fitzpatrick() {
  const LPositiveSet A = operator_graph_set(1, Mat::Identity(1, 1));
  const SnSpace& sp = A.space();
  double worst = 0.0;
  for (int i = 0; i < 41; ++i)
    for (int j = 0; j < 41; ++j) {
      const Vec b = v2(-2.0 + 0.1 * i, -2.0 + 0.1 * j);
      worst = std::max(worst,
                       std::abs(phi(A, b).value() - (b[0] + b[1]) * (b[0] + b[1]) / 4.0));
    }
  bool membership_ok = true;
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const bool on_graph = i % 2 == 0;
    const double t = random_uniform(rng, -2.0, 2.0);
    const Vec b = on_graph ? v2(t, t) : v2(t, t + random_uniform(rng, 0.5, 2.0));
    const double gap = phi(A, b).value() - q_form(sp, b);
    const bool coincide = std::abs(gap) <= 1e-8;
    if (coincide != on_graph) membership_ok = false;
  }
  report(6, "Fitzpatrick quarter-square form", worst <= 1e-8 && membership_ok,
         "max |phi - (x+x*)^2/4| = " + fmt(worst) +
             (membership_ok ? ", membership ok" : ", membership MISMATCH"));
}

// --- 7: coincidence-projection iteration -------------------------------------------

void criterion_projection_iteration() {
  const SnSpace sp = product_space(1);
  const ConvexFn h = ConvexFn::fitzpatrick_of(
      std::make_shared<const LPositiveSet>(operator_graph_set(1, Mat::Identity(1, 1))));
  const CoincidenceTrace tr = project_to_coincidence(sp, h, v2(1.0, -1.0), 0.1);
  bool steps_ok = true;
  for (std::size_t k = 0; k < tr.step_norms.size(); ++k)
    if (tr.step_norms[k] > 3.0 * std::pow(0.1, static_cast<double>(k)) + 1e-12) steps_ok = false;
  const bool ok = !tr.inner_failed && tr.final_residual <= 1e-6 && steps_ok &&
                  tr.dist_from_start <= tr.n_c + 3.0;
  report(7, "coincidence projection", ok,
         "residual=" + fmt(tr.final_residual) + " dist=" + fmt(tr.dist_from_start) +
             " N_c=" + fmt(tr.n_c) + (steps_ok ? ", geometric steps ok" : ", step bound VIOLATED"));
}

// --- 8: norm-bound suite --------------------------------------------------------------

void criterion_norm_bounds() {
  Rng rng(29);
  double worst_slack = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    Mat M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = random_uniform(rng, -1.0, 1.0);
    M += (1.0 + n) * Mat::Identity(n, n);
    const SnSpace sp =
        trial % 2 == 0 ? product_space(n) : product_space(n, NormKind::ell1());
    std::vector<Vec> pts;
    const int count = 2 + static_cast<int>(rng() % 6);
    for (int i = 0; i < count; ++i) {
      const Vec x = random_vec(rng, n, 1.5);
      pts.push_back(sp.join(x, M * x));
    }
    const LPositiveSet A = cloud_set(sp, pts);
    const Vec b = random_vec(rng, 2 * n, 2.0);
    const Vec& a = pts[rng() % pts.size()];
    worst_slack = std::min(worst_slack, zagrodny_slack(A, a, b));
  }

  // (13.1)-style inequality on random pairs.
  double worst_tri = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const SnSpace sp = i % 2 == 0 ? product_space(2) : product_space(2, NormKind::ell1());
    const Vec d = random_vec(rng, 4, 1.5), e = random_vec(rng, 4, 1.5);
    const double arg = 2.0 * r_form(sp, e) + 2.0 * r_form(sp, d) - 2.0 * q_form(sp, d - e);
    const double viol =
        norm_value(sp.norm, e) - std::sqrt(std::max(0.0, arg)) - norm_value(sp.norm, d);
    worst_tri = std::max(worst_tri, viol);
  }

  // Quadratic minorations for PC_q members.
  const SnSpace sp = product_space(1);
  const ConvexFn f = ConvexFn::separable_pair(ConvexFn::half_sq(1));
  double worst_minor = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec a = random_vec(rng, 2, 1.5), c = random_vec(rng, 2, 1.5);
    const double fa = evaluate(f, a).value() - q_form(sp, a);
    const double fc = evaluate(f, c).value() - q_form(sp, c);
    worst_minor = std::max(worst_minor, -q_form(sp, a - c) - 2 * fa - 2 * fc);
    const double sharp = std::sqrt(std::max(0.0, fa)) + std::sqrt(std::max(0.0, fc));
    worst_minor = std::max(worst_minor, -q_form(sp, a - c) - sharp * sharp);
  }

  const bool ok = worst_slack >= -1e-9 && worst_tri <= 1e-9 && worst_minor <= 1e-9;
  report(8, "norm-bound suite", ok,
         "min slack=" + fmt(worst_slack) + ", max triangle violation=" + fmt(worst_tri) +
             ", max minoration violation=" + fmt(worst_minor));
}

// --- 9: alignment suite -----------------------------------------------------------------

void criterion_alignment() {
  Rng rng(31);
  // 20 library cases across representations and scalings.
  std::vector<std::tuple<MonoMap, Vec, Vec, double, double>> cases;
  Mat M2(2, 2);
  M2 << 1.0, 0.6, -0.6, 0.8;
  const std::vector<MonoMap> maps = {MonoMap::identity(1), MonoMap::identity(2),
                                     MonoMap::linear(M2),
                                     MonoMap::subdiff(ConvexFn::abs_value(1.0)),
                                     MonoMap::subdiff(ConvexFn::half_sq(1))};
  for (const MonoMap& S : maps)
    for (int i = 0; i < 4; ++i) {
      const int n = S.domain_dim();
      cases.emplace_back(S, random_vec(rng, n, 1.5), random_vec(rng, n, 1.5),
                         random_uniform(rng, 0.5, 2.0), random_uniform(rng, 0.5, 2.0));
    }
  double max_spread = 0.0;
  for (const auto& [S, w, ws, al, be] : cases) {
    const AlignmentResult r = alignment_tau(S, w, ws, al, be);
    max_spread = std::max(max_spread, r.spread);
  }

  const AlignmentResult id = alignment_tau(MonoMap::identity(1), v1(1.0), v1(-1.0), 1.0, 1.0);
  const bool tau_ok = std::abs(id.tau - 1.0) <= 1e-4;

  // Two-way consistency between the alignment route and certification.
  bool agree = true;
  const std::vector<Vec> probes = lattice_probe_grid(2, 4.0, 1.0);
  const std::vector<LPositiveSet> sets = {
      operator_graph_set(1, Mat::Identity(1, 1)), subdiff_graph_set(ConvexFn::abs_value(1.0)),
      subdiff_graph_set(ConvexFn::half_sq(1)), cloud_set(product_space(1), {v2(0, 0)}),
      operator_graph_set(1, Mat::Zero(1, 1))};
  for (const LPositiveSet& A : sets) {
    const bool via_alignment =
        quasidense_via_alignment(A, probes, SolverConfig{}, 1e-7).consistent_with_quasidense;
    const bool via_cert = certify_quasidense(A, probes, SolverConfig{}, 1e-7).verdict ==
                          DensityVerdict::quasidense_on_grid;
    if (via_alignment != via_cert) agree = false;
  }

  report(9, "alignment suite", max_spread <= 1e-4 && tau_ok && agree,
         "max spread=" + fmt(max_spread) + ", tau(1,-1)=" + fmt(id.tau) +
             (agree ? ", routes agree" : ", routes DISAGREE"));
}

// --- 10: sum theorems ----------------------------------------------------------------------

void criterion_sum_theorems() {
  Rng rng(37);
  bool all_agree = true;
  int conclusive = 0, total = 0;
  const std::vector<std::pair<ConvexFn, ConvexFn>> pairs = {
      {ConvexFn::half_sq(1), ConvexFn::half_sq(1)},
      {ConvexFn::half_sq(1), ConvexFn::abs_value(1.0)},
      {ConvexFn::abs_value(1.0), ConvexFn::abs_value(1.0)}};
  for (const auto& [k1, k2] : pairs) {
    const MonoMap S = MonoMap::subdiff(k1);
    const MonoMap T = MonoMap::subdiff(k2);
    const MonoMap ST = op_sum(S, T);
    std::vector<std::pair<Vec, Vec>> probes;
    for (int i = 0; i < 50; ++i) {
      const double y = random_uniform(rng, -1.5, 1.5);
      const auto s1 = subgradient_at(k1, y);
      const auto s2 = subgradient_at(k2, y);
      if (i % 2 == 0 && s1 && s2) {
        probes.emplace_back(v1(y), v1(*s1 + *s2));  // a member of G(S + T)
      } else {
        probes.emplace_back(v1(y), v1(random_uniform(rng, -3.0, 3.0)));
      }
    }
    const SumIdentityReport rep = sum_identity_check(S, T, probes, SolverConfig{}, 1e-6);
    for (const SumIdentityProbe& p : rep.probes) {
      ++total;
      if (!p.conclusive) continue;
      ++conclusive;
      const bool member = ST.graph_contains(p.y, p.ystar, 1e-6);
      if (p.coincides != member) all_agree = false;
    }
  }

  // Parallel sum: identity with identity is the halving map.
  const MonoMap ps = parallel_sum(MonoMap::identity(1), MonoMap::identity(1));
  bool halving = true;
  for (int i = 0; i < 50; ++i) {
    const double x = random_uniform(rng, -3.0, 3.0);
    if (!ps.graph_contains(v1(x), v1(x / 2.0), 1e-6)) halving = false;
  }

  report(10, "sum theorems", all_agree && halving && conclusive >= total * 9 / 10,
         std::string(all_agree ? "membership agrees" : "membership DISAGREES") + " (" +
             std::to_string(conclusive) + "/" + std::to_string(total) + " conclusive)" +
             (halving ? ", parallel sum halves" : ", parallel sum WRONG"));
}

// --- 11: determinism and CLI exit codes ------------------------------------------------------

std::string run_capture(const std::string& cmd, int* exit_code) {
  const std::string path = "/tmp/snmono_acceptance_out.txt";
  const int rc = std::system((cmd + " > " + path + " 2>/dev/null").c_str());
  *exit_code = WEXITSTATUS(rc);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_cli() {
  const char* bin = std::getenv("SNMONO_BIN");
  if (!bin) {
    report(11, "CLI determinism & exit codes", false, "SNMONO_BIN not set");
    return;
  }
  const std::string b(bin);
  int rc1 = 0, rc2 = 0;
  const std::string out1 = run_capture(b + " demo tail --seed 7 --no-timestamp", &rc1);
  const std::string out2 = run_capture(b + " demo tail --seed 7 --no-timestamp", &rc2);
  const bool deterministic = !out1.empty() && out1 == out2 && rc1 == 0 && rc2 == 0;

  // Exit-code contract: pass, forced refutation, malformed input.
  const std::string set_path = "/tmp/snmono_acceptance_singleton.json";
  {
    std::ofstream f(set_path);
    f << set_to_json(cloud_set(product_space(1), {Vec::Zero(2)})).dump();
  }
  const std::string bad_path = "/tmp/snmono_acceptance_bad.json";
  {
    std::ofstream f(bad_path);
    f << "{ definitely not json";
  }
  int rc_pass = 0, rc_refuted = 0, rc_bad = 0;
  run_capture(b + " demo heads-and-tails --seed 3 --no-timestamp", &rc_pass);
  run_capture(b + " quasidense --set " + set_path, &rc_refuted);
  run_capture(b + " validate --space " + bad_path, &rc_bad);
  const bool codes = rc_pass == 0 && rc_refuted == 1 && rc_bad == 2;

  report(11, "CLI determinism & exit codes", deterministic && codes,
         std::string(deterministic ? "byte-identical" : "OUTPUT DIFFERS") + ", exit codes " +
             std::to_string(rc_pass) + "/" + std::to_string(rc_refuted) + "/" +
             std::to_string(rc_bad) + " (want 0/1/2)");
}

}  // namespace

int main() {
  criterion_tail_bound();
  criterion_s_function();
  criterion_closed_forms();
  criterion_head_tail();
  criterion_relation_oracles();
  criterion_fitzpatrick();
  criterion_projection_iteration();
  criterion_norm_bounds();
  criterion_alignment();
  criterion_sum_theorems();
  criterion_cli();
  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
