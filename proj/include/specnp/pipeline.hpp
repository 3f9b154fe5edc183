#ifndef SPECNP_PIPELINE_HPP
#define SPECNP_PIPELINE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <specnp/feasibility_engine.hpp>
#include <specnp/realization_sw.hpp>
#include <specnp/robust_stab.hpp>

namespace specnp {

struct SolveOptions {
  SolverConfig config;
  std::optional<ZGrid> zgrid;
  SwOptions sw;
};

struct SolveOutcome {
  VerdictKind kind = VerdictKind::Indeterminate;
  std::string message;
  std::vector<std::string> warnings;
  GammaProblem problem;
  ZGrid grid;
  Verdict verdict;
  std::optional<CertificateReport> certificate;
  std::optional<SwResult> sw;
  std::optional<InterpolantCheck> check;
  /// Matrix interpolant (spectral problems only).
  std::shared_ptr<CompanionLift> lift;
  double lift_node_error = 0.0;
  double seconds = 0.0;

  /// h = (tr, det) Psi of the realization. Requires sw.
  GammaPoint h(cplx lambda) const;
};

/// to_gamma -> build_lmi -> rank-constrained search -> SW -> verification.
/// A SOLVABLE search result whose interpolant fails verification is reported
/// as INDETERMINATE.
SolveOutcome solve_gamma(const GammaProblem& gp, const SolveOptions& opt = {});

/// As solve_gamma, then lifts h to a matrix interpolant. Targets with spectral
/// radius above one give UNSOLVABLE without running the search.
SolveOutcome solve_spectral(const SpectralProblem& sp,
                            const SolveOptions& opt = {});

struct MuDemoOptions {
  SolveOptions solve;
  int grid = 400;
  /// Contraction factors tried, in order, for the strict synthesis.
  std::vector<double> rhos = {0.5, 0.75, 0.9, 0.95, 0.99, 0.999};
  int anchor_attempts = 24;
  bool synthesize = true;
};

struct MuDemoResult {
  cplx a{0.0, 0.0};
  cplx c{0.0, 0.0};
  double threshold = 0.0;
  bool criterion = false;
  /// Two-point oracle on h(0) = (zeta, 0), h(1/2) = (-zeta, 0).
  cplx zeta{0.0, 0.0};
  double distance = 0.0;
  bool oracle = false;
  SolveOutcome solve;

  bool controller_built = false;
  double rho = 0.0;
  std::string synthesis_message;
  Matrix2 F1 = Matrix2::Zero();
  Matrix2 Q_inf = Matrix2::Zero();
  Matrix2 K_inf = Matrix2::Zero();
  double nonsingularity_sigma = 0.0;
  double controller_formula_gap = 0.0;
  double max_Q_sample = 0.0;
  robust::RobustReport robust;
};

/// Closed-form criterion, oracle cross-check, solver on the disc problem, and
/// (when solvable) Q, K and the boundary check of r(T1 - b1 b3 Q).
MuDemoResult run_mu_demo(cplx a, cplx c, const MuDemoOptions& opt = {});

}  // namespace specnp

#endif  // SPECNP_PIPELINE_HPP
