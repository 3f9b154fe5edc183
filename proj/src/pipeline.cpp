#include <specnp/pipeline.hpp>

#include <chrono>
#include <cmath>
#include <random>

#include <specnp/gamma_core.hpp>

namespace specnp {
namespace {

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Realization contract(const Realization& r, double rho) {
  Realization out = r;
  out.A *= rho;
  out.B *= rho;
  out.unitary = false;
  return out;
}

}  // namespace

GammaPoint SolveOutcome::h(cplx lambda) const {
  if (!sw) throw Error(ErrorKind::Precondition, "no realization available");
  return eval_h(sw->realization, lambda);
}

SolveOutcome solve_gamma(const GammaProblem& gp, const SolveOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveOutcome out;
  out.problem = gp;
  validate(opt.config);
  try {
    validate(gp);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OutsideGamma) throw;
    out.kind = VerdictKind::Unsolvable;
    out.message = e.what();
    out.seconds = elapsed(t0);
    return out;
  }
  if (opt.zgrid) {
    validate(*opt.zgrid, gp);
    out.grid = *opt.zgrid;
  } else {
    out.grid = default_zgrid(gp);
  }
  const LmiSystem lmi = build_lmi(gp, out.grid);
  out.verdict = solve_rank_constrained(lmi, opt.config);
  out.kind = out.verdict.kind;
  out.message = out.verdict.message;
  if (out.kind == VerdictKind::Solvable) {
    try {
      out.certificate = certify_witness(lmi, *out.verdict.witness, opt.config);
      out.sw = procedure_sw(lmi, *out.verdict.witness, opt.sw, opt.config.rank_tol);
      const Realization r = out.sw->realization;
      out.check = verify_interpolant([r](cplx l) { return eval_h(r, l); }, gp);
      if (!out.check->ok()) {
        out.kind = VerdictKind::Indeterminate;
        out.message = "witness found but the synthesized interpolant failed verification";
      }
    } catch (const Error& e) {
      out.kind = VerdictKind::Indeterminate;
      out.message = std::string("witness found but synthesis failed: ") + e.what();
    }
  }
  out.seconds = elapsed(t0);
  return out;
}

SolveOutcome solve_spectral(const SpectralProblem& sp, const SolveOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::string> warnings = validate(sp);
  GammaProblem gp;
  try {
    gp = to_gamma_problem(sp);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OutsideGamma) throw;
    SolveOutcome out;
    out.kind = VerdictKind::Unsolvable;
    out.message = e.what();
    out.warnings = warnings;
    out.seconds = elapsed(t0);
    return out;
  }
  SolveOutcome out = solve_gamma(gp, opt);
  out.warnings = warnings;
  if (out.kind == VerdictKind::Solvable) {
    try {
      const Realization r = out.sw->realization;
      out.lift = std::make_shared<CompanionLift>(
          [r](cplx l) { return eval_h(r, l); }, sp, std::nullopt, opt.config.seed);
      for (std::size_t j = 0; j < sp.nodes.size(); ++j) {
        out.lift_node_error = std::max(
            out.lift_node_error,
            ((*out.lift)(sp.nodes[j]) - sp.targets[j]).cwiseAbs().maxCoeff());
      }
      if (out.lift_node_error > 1e-6) {
        out.kind = VerdictKind::Indeterminate;
        out.message = "matrix lift misses the targets";
      }
    } catch (const Error& e) {
      out.kind = VerdictKind::Indeterminate;
      out.message = std::string("matrix lift failed: ") + e.what();
    }
  }
  out.seconds = elapsed(t0);
  return out;
}

MuDemoResult run_mu_demo(cplx a, cplx c, const MuDemoOptions& opt) {
  MuDemoResult res;
  res.a = a;
  res.c = c;
  res.threshold = robust::robust_threshold();
  res.criterion = robust::robust_criterion(c);
  res.zeta = (std::sqrt(3.0) - 2.0) * c;
  res.distance = pseudo_hyperbolic(0.0, 0.5);
  res.oracle = two_point_antipodal_solvable(0.0, 0.5, res.zeta);

  const SpectralProblem sp = robust::to_disc_problem(a, c);
  res.solve = solve_spectral(sp, opt.solve);
  if (res.solve.kind != VerdictKind::Solvable || !opt.synthesize) return res;

  const robust::CoprimeData cd = robust::doubly_coprime();
  const GammaProblem gp = to_gamma_problem(sp);
  std::mt19937_64 rng(opt.solve.config.seed);
  std::uniform_real_distribution<double> mod(0.5, 2.0);
  std::uniform_real_distribution<double> arg(0.0, 2.0 * M_PI);
  res.synthesis_message = "no contraction factor produced a strict interpolant";

  for (double rho : opt.rhos) {
    GammaProblem scaled = gp;
    for (GammaPoint& v : scaled.values) v = {v.s / rho, v.p / (rho * rho)};
    bool inside = true;
    for (const GammaPoint& v : scaled.values) inside = inside && in_gamma(v, 0.0);
    if (!inside) continue;
    const SolveOutcome inner = solve_gamma(scaled, opt.solve);
    if (inner.kind != VerdictKind::Solvable) continue;
    const Realization r = contract(inner.sw->realization, rho);
    const HEvaluator h = [r](cplx l) { return eval_h(r, l); };
    if (!verify_interpolant(h, gp).ok()) continue;

    for (int attempt = 0; attempt < opt.anchor_attempts; ++attempt) {
      try {
        std::optional<CompanionLift::Anchor> anchor;
        if (attempt > 0) {
          Matrix2 v = Matrix2::Identity();
          v(0, 0) = std::polar(mod(rng), arg(rng));
          anchor = CompanionLift::Anchor{1.0, v};
        }
        auto lift = std::make_shared<CompanionLift>(h, sp, anchor,
                                                    opt.solve.config.seed + attempt);
        robust::QFunction q = robust::build_Q(
            [lift](cplx l) { return (*lift)(l); }, a, c);
        const robust::Controller k =
            robust::build_controller(cd, [q](cplx s) { return q(s); }, q.at_infinity());
        res.robust = robust::verify_robust(q, opt.grid);
        res.rho = rho;
        res.F1 = q.F_at_one();
        res.Q_inf = q.at_infinity();
        res.K_inf = k.at_infinity();
        res.controller_formula_gap = k.formula_gap();
        Eigen::JacobiSVD<Matrix2> svd(res.F1 + robust::nonsingularity_offset(a, c));
        res.nonsingularity_sigma = svd.singularValues()(1);
        res.max_Q_sample = 0.0;
        std::vector<cplx> probes = robust::sample_points();
        for (double x : {1.0, 3.0}) {
          for (double d : {0.0, 1e-6, 1e-3}) probes.emplace_back(x + d, d);
        }
        for (cplx s : probes) {
          res.max_Q_sample = std::max(res.max_Q_sample, q(s).cwiseAbs().maxCoeff());
        }
        res.controller_built = true;
        if (res.robust.pass) {
          res.synthesis_message = "controller synthesized and verified";
          return res;
        }
        res.synthesis_message = "controller synthesized but the boundary check failed";
        break;
      } catch (const Error& e) {
        res.synthesis_message = std::string("synthesis attempt failed: ") + e.what();
      }
    }
  }
  return res;
}

}  // namespace specnp
