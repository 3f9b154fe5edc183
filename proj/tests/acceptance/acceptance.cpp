// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <specnp/gamma_core.hpp>
#include <specnp/linalg.hpp>
#include <specnp/pipeline.hpp>

#include "../support/generators.hpp"

using namespace specnp;

namespace {

const double r3 = std::sqrt(3.0);

double max_abs(const CMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

cplx bl(cplx gamma, cplx s) { return (s - gamma) / (s + std::conj(gamma)); }

Matrix2 mat(cplx a, cplx b, cplx c, cplx d) {
  Matrix2 m;
  m << a, b, c, d;
  return m;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

MuDemoOptions demo_options() {
  MuDemoOptions o;
  o.solve.config.seed = 7;
  return o;
}

// Criteria 1, 2, 9 and 10 share these runs.
struct DemoRun {
  double c;
  MuDemoResult res;
};
std::vector<DemoRun> g_family;
double g_family_seconds = 0.0;

void run_family() {
  const auto t0 = std::chrono::steady_clock::now();
  for (double c : {0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 5.0}) {
    g_family.push_back({c, run_mu_demo(10.0, c, demo_options())});
  }
  g_family_seconds = seconds_since(t0);
}

Outcome criterion1() {
  Outcome o;
  for (const DemoRun& r : g_family) {
    const bool want = r.c < 1.8;
    const bool solvable = r.res.criterion && r.res.solve.kind == VerdictKind::Solvable;
    o.require(r.res.criterion == want, fmt("closed form wrong at c=%g", r.c));
    if (want) {
      o.require(solvable, fmt("solver did not return SOLVABLE at c=%g", r.c));
    } else {
      o.require(r.res.solve.kind != VerdictKind::Solvable, fmt("SOLVABLE at c=%g", r.c));
    }
  }
  const double thr = robust::robust_threshold();
  o.require(std::abs(thr - testing::oracle_threshold()) < 1e-12, "threshold mismatch");
  o.require(std::abs(thr - 1.866) < 5e-4, "threshold not about 1.866");
  o.require(g_family_seconds < 60.0, fmt("runtime %.1f s", g_family_seconds));
  if (o.pass) o.detail = fmt("threshold %.12f, ", thr) + fmt("%.2f s", g_family_seconds);
  return o;
}

Outcome criterion2() {
  Outcome o;
  const MuDemoResult* r = nullptr;
  for (const DemoRun& d : g_family) {
    if (d.c == 2.0) r = &d.res;
  }
  o.require(r != nullptr, "missing run");
  if (!r) return o;
  o.require(!r->criterion, "closed form says solvable");
  o.require(!r->oracle, "oracle says solvable");
  o.require(r->solve.kind != VerdictKind::Solvable, "solver says SOLVABLE");
  o.require(!r->controller_built, "controller built");
  if (o.pass) o.detail = std::string("solver verdict ") + to_string(r->solve.kind);
  return o;
}

Outcome criterion3() {
  Outcome o;
  o.require(std::abs(pseudo_hyperbolic(0.0, 0.5) - 0.5) <= 1e-15, "d(0, 1/2) != 1/2");
  o.require(std::abs(testing::oracle_distance(0.0, 0.5) - 0.5) <= 1e-15, "oracle d(0, 1/2)");
  int mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const double c = 0.02 + (4.0 - 0.02) * i / 99.0;
    const cplx zeta = (r3 - 2.0) * c;
    const bool exact = two_point_antipodal_solvable(0.0, 0.5, zeta);
    const bool indep = std::abs(zeta) < testing::oracle_distance(0.0, 0.5);
    if (exact != robust::robust_criterion(c) || exact != indep) ++mismatches;
  }
  o.require(mismatches == 0, fmt("%g mismatches", mismatches));
  if (o.pass) o.detail = "100 grid points agree";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const robust::FgPair fg = robust::fg_pair();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> re(1e-3, 30.0), im(-30.0, 30.0);
  double bez = 0.0;
  for (int i = 0; i < 100; ++i) {
    const cplx s(re(rng), im(rng));
    bez = std::max(bez, std::abs(fg.f(s) * bl(1.0, s) + fg.g(s) * bl(3.0, s) - 1.0));
  }
  o.require(bez < 1e-10, fmt("Bezout residual %.3g", bez));
  const robust::CoprimeData cd = robust::doubly_coprime();
  double b2 = 0.0;
  for (cplx s : robust::sample_points()) b2 = std::max(b2, robust::bezout2_residual(cd, s));
  o.require(b2 < 1e-8, fmt("double Bezout residual %.3g", b2));
  double id = 0.0;
  for (auto [a, c] : {std::pair{10.0, 2.0}, std::pair{1.0, 1.0}}) {
    const robust::StabilizabilityReport rep =
        robust::check_plant_stabilizable(robust::assemble_plant(a, c), cd);
    id = std::max(id, rep.max_identity_error);
    o.require(rep.ok, fmt("8x8 identity fails at a=%g", a));
  }
  if (o.pass) {
    o.detail = fmt("Bezout %.2g, ", bez) + fmt("product %.2g, ", b2) + fmt("8x8 %.2g", id);
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  testing::Rng rng(5);
  const SolverConfig cfg;
  double worst_res = 0.0, worst_node = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 3;
    const Realization r =
        testing::random_shaped_realization(rng, 1 + trial % 2, 1 + (trial / 2) % 2, 0.95);
    const GammaProblem gp = testing::sample_problem(r, testing::random_nodes(rng, n, 0.85));
    const ZGrid grid = default_zgrid(gp);
    const LmiSystem lmi = build_lmi(gp, grid);
    const WitnessPair w =
        witness_from_solution([&r](cplx l) { return eval_psi(r, l); }, gp, grid);
    const double res = max_abs(residual(lmi, w));
    const CertificateReport cert = certify_witness(lmi, w, cfg);
    const SwResult sw = procedure_sw(lmi, w);
    const InterpolantCheck chk =
        verify_interpolant([&sw](cplx l) { return eval_h(sw.realization, l); }, gp);
    worst_res = std::max(worst_res, res);
    worst_node = std::max(worst_node, chk.max_node_error);
    const bool ok = res < 1e-8 && cert.rank_N <= 1 && cert.bound_violations == 0 &&
                    chk.max_node_error < 1e-6 && chk.gamma_ok;
    if (!ok) ++failures;
  }
  const double secs = seconds_since(t0);
  o.require(failures == 0, fmt("%g failing instances", failures));
  o.require(secs < 120.0, fmt("runtime %.1f s", secs));
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("residual %.2g, ", worst_res) +
              fmt("node error %.2g, ", worst_node) + fmt("%.2f s", secs);
  return o;
}

Outcome criterion6() {
  Outcome o;
  testing::Rng rng(6);
  std::uniform_int_distribution<int> dim(3, 12), rank(0, 3);
  int bad = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = dim(rng);
    const int k = rank(rng);
    const double v = objective(testing::random_psd(rng, n, k));
    if (v < -1e-10) ++bad;
    if (k <= 1 && v > 1e-10) ++bad;
    // Two eigenvalues of at least 0.1 give at least 2 * 0.01.
    if (k >= 2 && v < 0.02 - 1e-10) ++bad;
  }
  o.require(bad == 0, fmt("%g violations", bad));
  if (o.pass) o.detail = "200 matrices";
  return o;
}

Outcome criterion7() {
  Outcome o;
  testing::Rng rng(7);
  double worst = 0.0;
  int disagreements = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Realization r = testing::random_shaped_realization(rng, 1, 1, 0.9);
    const GammaProblem gp =
        testing::sample_problem(r, testing::random_nodes(rng, 1 + trial % 3, 0.8));
    const LmiSystem lmi = build_lmi(gp, default_zgrid(gp));
    const int d = lmi.dim();
    const CRowVec g = testing::random_complex(rng, 1, d) * 0.3;
    const CMat M = testing::random_psd(rng, d, 1 + trial % d) * 0.2;
    CMat P(d, 2);
    P.col(0) = g.adjoint();
    P.col(1) = -lmi.Zmat().adjoint() * g.adjoint();
    const SchurForm sf = to_schur_form(lmi, g, M, P);
    const CMat form2 = residual(lmi, {g.adjoint() * g, M, g});
    const CMat diff = sf.lhs - sf.rhs;
    CMat embedded = CMat::Zero(d + 2, d + 2);
    embedded.bottomRightCorner(d, d) = form2;
    worst = std::max(worst, max_abs(diff - embedded));
    if (is_psd(diff) != is_psd(form2)) ++disagreements;
    const WitnessPair back = from_schur_form(lmi, M, g, P);
    worst = std::max(worst, max_abs(back.N - g.adjoint() * g));
  }
  o.require(worst < 1e-8, fmt("residual gap %.3g", worst));
  o.require(disagreements == 0, "feasibility verdicts differ");
  if (o.pass) o.detail = fmt("max gap %.2g over 20 witnesses", worst);
  return o;
}

Outcome criterion8() {
  Outcome o;
  o.require(cayley(0.0) == cplx(1.0), "cayley(0) != 1");
  o.require(cayley(0.5) == cplx(3.0), "cayley(1/2) != 3");
  o.require(cayley_inv(1.0) == cplx(0.0) && cayley_inv(3.0) == cplx(0.5), "inverse map");
  const double brt = std::abs(robust::blaschke(r3)(1.0) - (r3 - 2.0));
  o.require(brt < 1e-15, fmt("b_sqrt3(1) off by %.3g", brt));
  o.require(std::abs((1.0 - r3) / (1.0 + r3) - (r3 - 2.0)) < 1e-15, "simplification");
  double worst = 0.0;
  for (auto [a, c] : {std::pair{10.0, 2.0}, std::pair{1.0, 1.0}, std::pair{0.0, 1.5}}) {
    const robust::TFunctions t = robust::build_T(a, c);
    worst = std::max(worst, max_abs(t.T1.evaluate(1.0) - CMat(mat(0, 0, -0.5 * a, (r3 - 2) * c))));
    worst = std::max(worst, max_abs(t.T1.evaluate(3.0) - CMat(mat(0, 0.5, 0, (2 - r3) * c))));
  }
  o.require(worst < 1e-10, fmt("T1 anchors off by %.3g", worst));
  if (o.pass) o.detail = fmt("T1 anchors within %.2g", worst);
  return o;
}

Outcome criterion9() {
  Outcome o;
  const MuDemoResult* r = nullptr;
  for (const DemoRun& d : g_family) {
    if (d.c == 1.0) r = &d.res;
  }
  o.require(r != nullptr, "missing run");
  if (!r) return o;
  o.require(r->controller_built, "no controller: " + r->synthesis_message);
  if (!r->controller_built) return o;
  o.require(r->robust.sup_radius < 1.0 && r->robust.pass,
            fmt("sup r = %.6f", r->robust.sup_radius));
  const Matrix2 xinf = mat(-1.0 / 3.0, -1, -1, 4.0 / 3.0);
  const Matrix2 ninf = mat(0, 1, 1, 0);
  Eigen::JacobiSVD<Matrix2> svd(xinf - ninf * r->Q_inf);
  const double smin = svd.singularValues()(1);
  o.require(smin > 1e-8, fmt("X(inf) - N(inf) Q(inf) has sigma_min %.3g", smin));
  o.require(r->controller_formula_gap < 1e-8, "controller formulas disagree");
  if (o.pass) {
    o.detail = fmt("sup r = %.6f, ", r->robust.sup_radius) + fmt("sigma_min %.3g", smin);
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  int unsound = 0, solvable_total = 0, solvable_found = 0, easy_total = 0, easy_found = 0;
  for (const DemoRun& r : g_family) {
    const bool found = r.res.solve.kind == VerdictKind::Solvable;
    if (!r.res.oracle && found) ++unsound;
    if (r.res.oracle) {
      ++solvable_total;
      solvable_found += found;
      if (std::abs(r.res.zeta) <= 0.8 * r.res.distance) {
        ++easy_total;
        easy_found += found;
      }
    }
  }
  testing::Rng rng(10);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  for (int i = 0; i < 50; ++i) {
    const bool inside = i % 2 == 0;
    std::uniform_real_distribution<double> ratio(inside ? 0.1 : 1.01, inside ? 0.8 : 1.6);
    const cplx l1 = testing::random_disc_point(rng, 0.8);
    cplx l2 = testing::random_disc_point(rng, 0.8);
    while (std::abs(l2 - l1) < 0.1) l2 = testing::random_disc_point(rng, 0.8);
    const double d = testing::oracle_distance(l1, l2);
    const cplx zeta = std::polar(ratio(rng) * d, phase(rng));
    const bool oracle = std::abs(zeta) < d;
    GammaProblem gp;
    gp.nodes = {l1, l2};
    gp.values = {{zeta, 0.0}, {-zeta, 0.0}};
    SolveOptions opt;
    opt.config.seed = 100 + i;
    const SolveOutcome out = solve_gamma(gp, opt);
    const bool found = out.kind == VerdictKind::Solvable;
    if (!oracle && found) ++unsound;
    if (oracle) {
      ++solvable_total;
      solvable_found += found;
      ++easy_total;
      easy_found += found;
    }
  }
  o.require(unsound == 0, fmt("%g unsound SOLVABLE verdicts", unsound));
  const double rate = easy_total ? double(easy_found) / easy_total : 1.0;
  o.require(rate >= 0.8, fmt("recall %.2f", rate));
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(easy_found) + "/" +
              std::to_string(easy_total) + " easy solvable instances found, " +
              std::to_string(solvable_found) + "/" + std::to_string(solvable_total) +
              " solvable overall";
  return o;
}

}  // namespace

int main() {
  try {
    run_family();
  } catch (const std::exception& e) {
    std::printf("worked-example runs failed: %s\n", e.what());
  }
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"two-point criterion reproduction", criterion1},
      {"no controller at (a, c) = (10, 2)", criterion2},
      {"oracle identities", criterion3},
      {"Bezout and stabilizability identities", criterion4},
      {"witness round trips", criterion5},
      {"rank-one objective", criterion6},
      {"Schur-form equivalence", criterion7},
      {"Cayley anchors", criterion8},
      {"controller synthesis at (a, c) = (10, 1)", criterion9},
      {"solver soundness", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %2zu %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    failed += !o.pass;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
