#include <specnp/feasibility_engine.hpp>

#include <cmath>
#include <random>

#include <specnp/barrier_sdp.hpp>
#include <specnp/gamma_core.hpp>
#include <specnp/linalg.hpp>

namespace specnp {
namespace {

// Used in place of the entry bounds when some |s_j| >= 2.
constexpr double kFallbackCap = 1e4;

struct DiagCaps {
  RVec n_caps;
  RVec m_caps;
  bool valid = true;
};

DiagCaps diag_caps(const LmiSystem& lmi) {
  const int d = lmi.dim();
  DiagCaps caps;
  try {
    const EntryBounds eb = entry_bounds(lmi.problem);
    caps.n_caps = eb.N_cap.diagonal();
    caps.m_caps = eb.M_cap.diagonal();
  } catch (const Error&) {
    caps.valid = false;
    caps.n_caps = RVec::Constant(d, kFallbackCap);
    caps.m_caps = RVec::Constant(d, kFallbackCap);
  }
  return caps;
}

CVec project_disc(CVec c) {
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    const double r = std::abs(c(j));
    if (r > 1.0) c(j) /= r;
  }
  return c;
}

double default_trace_cap(const LmiSystem& lmi) {
  const DiagCaps caps = diag_caps(lmi);
  return caps.m_caps.sum();
}

/// Projected ascent of t(c) with central-difference gradients.
RankOneCandidate ascend(const LmiSystem& lmi, CVec c, double trace_cap,
                        const SolverConfig& cfg) {
  constexpr double kFdStep = 1e-5;
  const Eigen::Index n = c.size();
  auto eval = [&](const CVec& p) {
    return evaluate_structured(lmi, p, cfg, trace_cap);
  };
  RankOneCandidate cur = eval(project_disc(c));
  double step = 0.5;
  double last_t = cur.t;
  int stall = 0;
  for (int it = 0; it < cfg.max_outer_iters; ++it) {
    if (cur.t >= cfg.margin_target) break;
    CVec dir(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      double g[2];
      for (int part = 0; part < 2; ++part) {
        const cplx e = part == 0 ? cplx(kFdStep, 0.0) : cplx(0.0, kFdStep);
        CVec plus = cur.c;
        CVec minus = cur.c;
        plus(j) += e;
        minus(j) -= e;
        g[part] = (eval(plus).t - eval(minus).t) / (2.0 * kFdStep);
      }
      dir(j) = cplx(g[0], g[1]);
    }
    const double norm = dir.norm();
    if (!(norm > 1e-12)) break;
    bool improved = false;
    double alpha = step;
    for (int bt = 0; bt <= cfg.max_backtracks; ++bt) {
      const CVec trial = project_disc(CVec(cur.c + (alpha / norm) * dir));
      RankOneCandidate res = eval(trial);
      if (res.t > cur.t) {
        cur = std::move(res);
        improved = true;
        break;
      }
      alpha *= cfg.step_decay;
    }
    if (!improved) break;
    step = std::min(1.0, 2.0 * alpha);
    // Relative stall test; the ascent creeps once it reaches a local maximum.
    if (cur.t - last_t < 1e-7 * (1.0 + std::abs(cur.t))) {
      if (++stall >= 3) break;
    } else {
      stall = 0;
    }
    last_t = cur.t;
  }
  return cur;
}

CVec random_disc_vector(std::mt19937_64& rng, int size, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CVec v(size);
  for (int j = 0; j < size; ++j) {
    const double r = radius * std::sqrt(unit(rng));
    const double theta = 2.0 * M_PI * unit(rng);
    v(j) = std::polar(r, theta);
  }
  return v;
}

}  // namespace

void validate(const SolverConfig& cfg) {
  if (!(cfg.psd_tol > 0.0) || !(cfg.rank_tol > 0.0) || !(cfg.gap_tol > 0.0)) {
    throw Error(ErrorKind::Precondition, "solver tolerances must be positive");
  }
  if (cfg.restarts < 1) {
    throw Error(ErrorKind::Precondition, "restarts must be at least 1");
  }
  if (cfg.max_outer_iters < 0 || cfg.max_backtracks < 0) {
    throw Error(ErrorKind::Precondition, "iteration budgets must be >= 0");
  }
  if (!(cfg.step_decay > 0.0 && cfg.step_decay < 1.0)) {
    throw Error(ErrorKind::Precondition, "step_decay must lie in (0, 1)");
  }
}

const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Solvable:
      return "SOLVABLE";
    case VerdictKind::Unsolvable:
      return "UNSOLVABLE";
    case VerdictKind::Indeterminate:
      return "INDETERMINATE";
  }
  return "INDETERMINATE";
}

double objective(const CMat& N) {
  const CMat h = hermitian_part(N);
  const double tr = h.trace().real();
  return tr * tr - h.squaredNorm();
}

RelaxationResult relaxed_feasible(const LmiSystem& lmi,
                                  const SolverConfig& cfg) {
  const int d = lmi.dim();
  const DiagCaps caps = diag_caps(lmi);
  const CMat kz = one_minus_kernel(lmi.z_diag);
  const CMat kl = one_minus_kernel(lmi.lambda_diag);

  const sdp::HermitianVariable nvar(0, d);
  const sdp::HermitianVariable mvar(d * d, d);
  const int tvar = 2 * d * d;

  sdp::AffineLmi res(lmi.X);
  nvar.add_hadamard(res, kz, -1.0);
  mvar.add_hadamard(res, kl, -1.0);
  for (int a = 0; a < d; ++a) res.add_entry(tvar, a, a, -1.0);

  sdp::AffineLmi npsd(CMat::Zero(d, d));
  nvar.add_plain(npsd, 1.0);
  sdp::AffineLmi mpsd(CMat::Zero(d, d));
  mvar.add_plain(mpsd, 1.0);

  CVec cap_diag(2 * d);
  cap_diag << caps.n_caps.cast<cplx>(), caps.m_caps.cast<cplx>();
  sdp::AffineLmi cap(CMat(cap_diag.asDiagonal()));
  for (int a = 0; a < d; ++a) {
    cap.add_entry(nvar.diag_index(a), a, a, -1.0);
    cap.add_entry(mvar.diag_index(a), d + a, d + a, -1.0);
  }

  RVec x0 = RVec::Zero(tvar + 1);
  const double start =
      0.5 * std::min(1.0, std::min(caps.n_caps.minCoeff(), caps.m_caps.minCoeff()));
  nvar.assign(x0, start * CMat::Identity(d, d));
  mvar.assign(x0, start * CMat::Identity(d, d));
  x0(tvar) = 0.0;
  x0(tvar) = min_eigenvalue(res.evaluate(x0)) - 1.0;

  RVec c = RVec::Zero(tvar + 1);
  c(tvar) = 1.0;
  sdp::Options opt;
  opt.gap_tol = cfg.gap_tol;
  opt.target = 1e-6;
  const sdp::Result r = sdp::maximize(c, {res, npsd, mpsd, cap}, x0, opt);

  RelaxationResult out;
  out.caps_valid = caps.valid;
  out.floor = r.objective;
  out.upper_bound = r.upper_bound;
  out.witness.N = nvar.value(r.x);
  out.witness.M = mvar.value(r.x);
  out.feasible = out.floor >= -cfg.psd_tol;
  out.certified_infeasible =
      caps.valid && !out.feasible && out.upper_bound < -cfg.psd_tol;
  return out;
}

CMat structured_basis(const LmiSystem& lmi) {
  const int n = lmi.n();
  CMat omega = CMat::Zero(lmi.dim(), n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < 3; ++k) {
      omega(LmiSystem::index(j, k), j) =
          1.0 / (1.0 - 0.5 * lmi.problem.values[j].s * lmi.grid.z[k]);
    }
  }
  return omega;
}

RankOneCandidate evaluate_structured(const LmiSystem& lmi, const CVec& c,
                                     const SolverConfig& cfg,
                                     double trace_cap) {
  const int n = lmi.n();
  const int d = lmi.dim();
  if (c.size() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "one structured coefficient per node is required");
  }
  if (!(trace_cap > 0.0)) trace_cap = default_trace_cap(lmi);

  RankOneCandidate out;
  out.c = c;
  out.gamma = (structured_basis(lmi) * c).transpose();

  // Per node, the relation shared by (1, z gamma) and (-Phi, gamma).
  out.basis = CMat::Zero(d, 2 * n);
  CVec lambda_r(2 * n);
  for (int j = 0; j < n; ++j) {
    Eigen::Matrix<cplx, 4, 3> stacked;
    for (int k = 0; k < 3; ++k) {
      const int a = LmiSystem::index(j, k);
      const cplx g = out.gamma(a);
      stacked(0, k) = 1.0;
      stacked(1, k) = lmi.z_diag(a) * g;
      stacked(2, k) = -magic_phi(lmi.grid.z[k], lmi.problem.values[j],
                                 kZGridMargin);
      stacked(3, k) = g;
    }
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 4, 3>> svd(stacked, Eigen::ComputeFullV);
    out.basis.block(3 * j, 2 * j, 3, 2) = svd.matrixV().leftCols(2);
    lambda_r(2 * j) = lmi.problem.nodes[j];
    lambda_r(2 * j + 1) = lmi.problem.nodes[j];
  }

  const CMat kz = one_minus_kernel(lmi.z_diag);
  const CMat N = out.gamma.adjoint() * out.gamma;
  const CMat& q = out.basis;
  const CMat base = q.adjoint() * (lmi.X - kz.cwiseProduct(N)) * q;
  const int r = 2 * n;

  const sdp::HermitianVariable mvar(0, r);
  const int tvar = r * r;
  sdp::AffineLmi res(hermitian_part(base));
  mvar.add_hadamard(res, one_minus_kernel(lambda_r), -1.0);
  for (int a = 0; a < r; ++a) res.add_entry(tvar, a, a, -1.0);
  sdp::AffineLmi mpsd(CMat::Zero(r, r));
  mvar.add_plain(mpsd, 1.0);
  sdp::AffineLmi cap(CMat::Constant(1, 1, trace_cap));
  for (int a = 0; a < r; ++a) cap.add_entry(mvar.diag_index(a), 0, 0, -1.0);

  RVec x0 = RVec::Zero(tvar + 1);
  const double start = std::min(0.5, 0.25 * trace_cap / r);
  mvar.assign(x0, start * CMat::Identity(r, r));
  x0(tvar) = min_eigenvalue(res.evaluate(x0)) - 1.0;

  RVec obj = RVec::Zero(tvar + 1);
  obj(tvar) = 1.0;
  sdp::Options opt;
  opt.gap_tol = cfg.gap_tol;
  const sdp::Result sol = sdp::maximize(obj, {res, mpsd, cap}, x0, opt);

  out.t = sol.objective;
  out.upper_bound = sol.upper_bound;
  out.M = hermitian_part(q * mvar.value(sol.x) * q.adjoint());
  return out;
}

Verdict solve_rank_constrained(const LmiSystem& lmi, const SolverConfig& cfg) {
  validate(cfg);
  Verdict v;
  const RelaxationResult relax = relaxed_feasible(lmi, cfg);
  if (relax.certified_infeasible) {
    v.kind = VerdictKind::Unsolvable;
    v.relaxation_residual = relax.upper_bound;
    v.message = "convex relaxation is infeasible";
    return v;
  }
  v.relaxation_residual = relax.upper_bound;
  v.best_objective = objective(relax.witness.N);
  v.best_witness = relax.witness;
  if (!relax.feasible) {
    v.message = "convex relaxation is not feasible within tolerance";
  }

  const int n = lmi.n();
  const double trace_cap = default_trace_cap(lmi);
  // Restarts that keep returning the same clearly negative maximum are not
  // worth continuing.
  constexpr int kRepeatLimit = 4;
  constexpr double kClearlyNegative = -1e-3;
  int repeats = 0;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::seed_seq seq{static_cast<unsigned long long>(cfg.seed),
                      static_cast<unsigned long long>(r)};
    std::mt19937_64 rng(seq);
    const CVec c0 = r == 0 ? CVec(CVec::Constant(n, cplx(0.5)))
                           : random_disc_vector(rng, n, 1.0);
    const RankOneCandidate run = ascend(lmi, c0, trace_cap, cfg);
    v.restarts_used = r + 1;
    WitnessPair w;
    w.gamma = run.gamma;
    w.N = run.gamma.adjoint() * run.gamma;
    w.M = run.M;
    const double prev_best = v.best_rank1_min_eig;
    if (run.t > v.best_rank1_min_eig) {
      v.best_rank1_min_eig = run.t;
      v.best_rank1 = w;
    }
    const double best = v.best_rank1_min_eig;
    repeats = std::abs(run.t - best) <= 1e-6 * (1.0 + std::abs(best)) &&
                      best - prev_best <= 1e-6 * (1.0 + std::abs(best))
                  ? repeats + 1
                  : 0;
    if (run.t >= -cfg.psd_tol) {
      v.kind = VerdictKind::Solvable;
      v.witness = w;
      v.message = "rank-one witness found";
      return v;
    }
    if (repeats >= kRepeatLimit && best < kClearlyNegative) break;
  }
  v.kind = VerdictKind::Indeterminate;
  if (v.message.empty()) v.message = "no rank-one witness found";
  return v;
}

CertificateReport certify_witness(const LmiSystem& lmi, const WitnessPair& w,
                                  const SolverConfig& cfg) {
  CertificateReport rep;
  const CMat r = residual(lmi, w);
  rep.min_residual_eig = min_eigenvalue(r);
  rep.rank_N = numerical_rank(w.N, cfg.rank_tol);
  rep.objective = objective(w.N);
  rep.psd_N = is_psd(w.N, cfg.psd_tol);
  rep.psd_M = is_psd(w.M, cfg.psd_tol);
  try {
    const EntryBounds eb = entry_bounds(lmi.problem);
    for (int a = 0; a < lmi.dim(); ++a) {
      for (int b = 0; b < lmi.dim(); ++b) {
        const double rn = std::abs(w.N(a, b)) / eb.N_cap(a, b);
        const double rm = std::abs(w.M(a, b)) / eb.M_cap(a, b);
        rep.max_bound_ratio = std::max({rep.max_bound_ratio, rn, rm});
        if (rn > 1.0 + 1e-9) ++rep.bound_violations;
        if (rm > 1.0 + 1e-9) ++rep.bound_violations;
      }
    }
  } catch (const Error&) {
    rep.max_bound_ratio = 0.0;
  }
  rep.feasible = rep.psd_N && rep.psd_M &&
                 rep.min_residual_eig >= -cfg.psd_tol * (1.0 + operator_norm(r));
  return rep;
}

}  // namespace specnp
