#include <doctest.h>

#include <cmath>

#include <specnp/barrier_sdp.hpp>
#include <specnp/feasibility_engine.hpp>
#include <specnp/lmi_builder.hpp>
#include <specnp/linalg.hpp>

#include "../support/generators.hpp"

using namespace specnp;
using specnp::testing::Rng;

namespace {

const double r3 = std::sqrt(3.0);

GammaProblem two_point(double c) {
  GammaProblem gp;
  gp.nodes = {0.0, 0.5};
  gp.values = {{(r3 - 2) * c, 0.0}, {(2 - r3) * c, 0.0}};
  return gp;
}

GammaProblem single_zero() {
  GammaProblem gp;
  gp.nodes = {0.3};
  gp.values = {{0.0, 0.0}};
  return gp;
}

cplx phi_by_hand(cplx z, cplx s, cplx p) { return (2.0 * z * p - s) / (2.0 - z * s); }

double max_abs(const CMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("LMI data for a zero value") {
  const LmiSystem lmi = build_lmi(single_zero(), ZGrid{});
  CHECK(lmi.dim() == 3);
  CHECK(max_abs(lmi.X - CMat::Ones(3, 3)) < 1e-15);
  CHECK(lmi.lambda_diag(2) == cplx(0.3));
  CHECK(lmi.z_diag(0) == cplx(-1.0));
}

TEST_CASE("LMI data for the two-point example against entrywise evaluation") {
  const GammaProblem gp = two_point(1.0);
  const ZGrid grid;
  const LmiSystem lmi = build_lmi(gp, grid);
  REQUIRE(lmi.dim() == 6);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      const int i = a / 3, l = a % 3, j = b / 3, k = b % 3;
      const cplx xi = phi_by_hand(grid.z[l], gp.values[i].s, gp.values[i].p);
      const cplx xj = phi_by_hand(grid.z[k], gp.values[j].s, gp.values[j].p);
      CHECK(std::abs(lmi.X(a, b) - (1.0 - std::conj(xi) * xj)) < 1e-14);
    }
  }
  // z = 0 rows and columns: 1 - conj(s_i) s_j / 4.
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const cplx want = 1.0 - std::conj(gp.values[i].s) * gp.values[j].s / 4.0;
      CHECK(std::abs(lmi.X(LmiSystem::index(i, 1), LmiSystem::index(j, 1)) - want) < 1e-15);
    }
  }
  CHECK(max_abs(lmi.X - lmi.X.adjoint()) < 1e-12);
  for (int a = 0; a < 6; ++a) CHECK(lmi.X(a, a).real() >= 0.0);
  CHECK(LmiSystem::pair_of(4) == std::make_pair(1, 1));
}

TEST_CASE("residual") {
  const LmiSystem lmi = build_lmi(two_point(1.0), ZGrid{});
  WitnessPair zero{CMat::Zero(6, 6), CMat::Zero(6, 6), std::nullopt};
  CHECK(max_abs(residual(lmi, zero) - lmi.X) < 1e-15);

  Rng rng(21);
  const WitnessPair w1{testing::random_psd(rng, 6, 1), testing::random_psd(rng, 6, 3), {}};
  const WitnessPair w2{testing::random_psd(rng, 6, 2), testing::random_psd(rng, 6, 6), {}};
  const WitnessPair sum{w1.N + w2.N, w1.M + w2.M, {}};
  CHECK(max_abs(residual(lmi, sum) - (residual(lmi, w1) + residual(lmi, w2) - lmi.X)) < 1e-12);

  const CMat expect = lmi.X - (w1.N - lmi.Zmat().adjoint() * w1.N * lmi.Zmat()) -
                      (w1.M - lmi.Lambda().adjoint() * w1.M * lmi.Lambda());
  CHECK(max_abs(residual(lmi, w1) - expect) < 1e-12);

  WitnessPair bad{CMat::Zero(3, 3), CMat::Zero(6, 6), {}};
  CHECK_THROWS_AS(residual(lmi, bad), Error);
}

TEST_CASE("entry bounds") {
  GammaProblem gp;
  gp.nodes = {0.0, cplx(0.3, 0.4)};
  gp.values = {{0.0, 0.2}, {0.0, -0.5}};
  const EntryBounds eb = entry_bounds(gp);
  CHECK(max_abs(eb.N_cap.cast<cplx>() - CMat::Ones(6, 6)) < 1e-15);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      const cplx li = gp.nodes[a / 3], lj = gp.nodes[b / 3];
      CHECK(std::abs(eb.M_cap(a, b) - 4.0 / std::abs(1.0 - std::conj(li) * lj)) < 1e-12);
    }
  }

  const GammaProblem ex = two_point(1.0);
  const EntryBounds e2 = entry_bounds(ex);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      const double si = std::abs(ex.values[a / 3].s), sj = std::abs(ex.values[b / 3].s);
      const double ncap = 1.0 / ((1 - si / 2) * (1 - sj / 2));
      const double ei = std::sqrt(1 + 1 / ((1 - si / 2) * (1 - si / 2)));
      const double ej = std::sqrt(1 + 1 / ((1 - sj / 2) * (1 - sj / 2)));
      const cplx li = ex.nodes[a / 3], lj = ex.nodes[b / 3];
      const double mcap = 2 * ei * ej / std::abs(1.0 - std::conj(li) * lj);
      CHECK(std::abs(e2.N_cap(a, b) - ncap) < 1e-12);
      CHECK(std::abs(e2.M_cap(a, b) - mcap) < 1e-12);
    }
  }

  GammaProblem edge;
  edge.nodes = {0.0};
  edge.values = {{2.0, 1.0}};
  CHECK_THROWS_AS(entry_bounds(edge), Error);
}

TEST_CASE("Schur form of the criterion") {
  const LmiSystem lmi = build_lmi(two_point(1.0), ZGrid{});
  const int d = lmi.dim();
  const SchurForm trivial =
      to_schur_form(lmi, CRowVec::Zero(d), CMat::Zero(d, d), CMat::Zero(d, 2));
  CMat want = CMat::Zero(d + 2, d + 2);
  want(0, 0) = -1.0;
  want(1, 1) = 1.0;
  CHECK(max_abs(trivial.rhs - want) < 1e-15);

  Rng rng(22);
  for (int trial = 0; trial < 5; ++trial) {
    const CRowVec g = testing::random_complex(rng, 1, d) * 0.3;
    const CMat M = testing::random_psd(rng, d, 3) * 0.2;
    CMat P(d, 2);
    P.col(0) = g.adjoint();
    P.col(1) = -lmi.Zmat().adjoint() * g.adjoint();
    const SchurForm sf = to_schur_form(lmi, g, M, P);
    const CMat res = residual(lmi, {g.adjoint() * g, M, g});
    const CMat diff = sf.lhs - sf.rhs;
    CHECK(max_abs(diff.bottomRightCorner(d, d) - res) < 1e-12);
    CHECK(max_abs(diff.topRows(2)) < 1e-12);
    CHECK(max_abs(diff.leftCols(2)) < 1e-12);
    CHECK(is_psd(diff) == is_psd(res));

    const WitnessPair back = from_schur_form(lmi, M, g, P);
    CHECK(max_abs(back.N - g.adjoint() * g) < 1e-10);
    CHECK(max_abs(back.M - M) < 1e-10);

    CMat wrong = P;
    wrong(0, 1) += 0.1;
    CHECK_THROWS_AS(from_schur_form(lmi, M, g, wrong), Error);
  }
}

TEST_CASE("barrier method on a diagonal problem") {
  // maximize t subject to diag(1, 2) - t I >= 0 and t + 3 >= 0.
  sdp::AffineLmi a(CMat(RVec::LinSpaced(2, 1.0, 2.0).cast<cplx>().asDiagonal()));
  a.add_entry(0, 0, 0, -1.0);
  a.add_entry(0, 1, 1, -1.0);
  sdp::AffineLmi b(CMat::Constant(1, 1, 3.0));
  b.add_entry(0, 0, 0, 1.0);
  RVec c(1);
  c << 1.0;
  const sdp::Result r = sdp::maximize(c, {a, b}, RVec::Zero(1));
  CHECK(r.converged);
  CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(r.upper_bound >= 1.0 - 1e-12);
  CHECK(r.upper_bound - r.objective < 1e-6);

  RVec bad(1);
  bad << 5.0;
  CHECK_THROWS_AS(sdp::maximize(c, {a, b}, bad), Error);
}

TEST_CASE("Hermitian variables round trip") {
  Rng rng(23);
  const sdp::HermitianVariable v(3, 4);
  CMat m = testing::random_complex(rng, 4, 4);
  m = m + m.adjoint().eval();
  RVec x = RVec::Zero(3 + 16);
  v.assign(x, m);
  CHECK(max_abs(v.value(x) - m) < 1e-15);
}

TEST_CASE("objective") {
  Rng rng(24);
  const CRowVec g = testing::random_complex(rng, 1, 6);
  CHECK(std::abs(objective(g.adjoint() * g)) < 1e-10);
  CMat d = CMat::Zero(5, 5);
  d(0, 0) = 1.0;
  d(1, 1) = 1.0;
  CHECK(objective(d) == doctest::Approx(2.0));
  const CMat p = testing::random_psd(rng, 5, 3);
  CHECK(objective(2.5 * p) == doctest::Approx(6.25 * objective(p)));
}

TEST_CASE("solver configuration") {
  SolverConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.restarts = 0;
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg = {};
  cfg.psd_tol = 0.0;
  CHECK_THROWS_AS(validate(cfg), Error);
  CHECK(std::string(to_string(VerdictKind::Solvable)) == "SOLVABLE");
  CHECK(std::string(to_string(VerdictKind::Unsolvable)) == "UNSOLVABLE");
  CHECK(std::string(to_string(VerdictKind::Indeterminate)) == "INDETERMINATE");
}

TEST_CASE("convex relaxation") {
  const SolverConfig cfg;
  const RelaxationResult zero = relaxed_feasible(build_lmi(single_zero(), ZGrid{}), cfg);
  CHECK(zero.feasible);

  const RelaxationResult ex = relaxed_feasible(build_lmi(two_point(1.0), ZGrid{}), cfg);
  CHECK(ex.feasible);
  CHECK(ex.caps_valid);

  LmiSystem neg = build_lmi(two_point(1.0), ZGrid{});
  neg.X = -CMat::Identity(6, 6);
  const RelaxationResult bad = relaxed_feasible(neg, cfg);
  CHECK_FALSE(bad.feasible);
  CHECK(bad.certified_infeasible);
  CHECK(bad.floor < -0.5);
  CHECK(bad.upper_bound < -0.5);
}

TEST_CASE("rank-constrained search") {
  const SolverConfig cfg;
  const LmiSystem z = build_lmi(single_zero(), ZGrid{});
  const Verdict v0 = solve_rank_constrained(z, cfg);
  REQUIRE(v0.kind == VerdictKind::Solvable);
  const CertificateReport c0 = certify_witness(z, *v0.witness, cfg);
  CHECK(c0.feasible);
  CHECK(c0.rank_N <= 1);

  const LmiSystem one = build_lmi(two_point(1.0), ZGrid{});
  const Verdict v1 = solve_rank_constrained(one, cfg);
  REQUIRE(v1.kind == VerdictKind::Solvable);
  const CertificateReport c1 = certify_witness(one, *v1.witness, cfg);
  CHECK(c1.feasible);
  CHECK(c1.rank_N <= 1);
  CHECK(c1.min_residual_eig >= -cfg.psd_tol);
  CHECK(c1.bound_violations == 0);
  CHECK(std::abs(c1.objective) < 1e-8);

  const Verdict again = solve_rank_constrained(one, cfg);
  CHECK(again.kind == v1.kind);
  CHECK(max_abs(again.witness->N - v1.witness->N) == 0.0);
  CHECK(max_abs(again.witness->M - v1.witness->M) == 0.0);

  const Verdict v2 = solve_rank_constrained(build_lmi(two_point(2.0), ZGrid{}), cfg);
  CHECK(v2.kind != VerdictKind::Solvable);
}

TEST_CASE("structured candidates") {
  const LmiSystem lmi = build_lmi(two_point(1.0), ZGrid{});
  const CMat omega = structured_basis(lmi);
  CHECK(omega.rows() == 6);
  CHECK(omega.cols() == 2);
  CVec c(2);
  c << 0.5, 0.5;
  const RankOneCandidate cand = evaluate_structured(lmi, c, SolverConfig{});
  CHECK(cand.basis.rows() == 6);
  CHECK(cand.basis.cols() == 4);
  CHECK(max_abs(cand.basis.adjoint() * cand.basis - CMat::Identity(4, 4)) < 1e-12);
  CHECK(cand.t <= cand.upper_bound + 1e-9);
  CHECK_THROWS_AS(evaluate_structured(lmi, CVec::Zero(3), SolverConfig{}), Error);
}

TEST_CASE("certificates") {
  const SolverConfig cfg;
  const LmiSystem lmi = build_lmi(single_zero(), ZGrid{});
  const CertificateReport z =
      certify_witness(lmi, {CMat::Zero(3, 3), CMat::Zero(3, 3), {}}, cfg);
  CHECK(z.feasible);
  CHECK(z.rank_N == 0);
  CHECK(z.psd_N);

  CMat n2 = CMat::Zero(3, 3);
  n2(0, 0) = 0.1;
  n2(1, 1) = 0.1;
  const CertificateReport r2 = certify_witness(lmi, {n2, CMat::Zero(3, 3), {}}, cfg);
  CHECK(r2.rank_N == 2);
  CHECK(r2.objective > 0.0);
  CHECK_FALSE(r2.feasible);
}
