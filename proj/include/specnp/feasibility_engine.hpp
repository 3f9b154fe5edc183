#ifndef SPECNP_FEASIBILITY_ENGINE_HPP
#define SPECNP_FEASIBILITY_ENGINE_HPP

///
/// \file feasibility_engine.hpp
///
/// Decides the rank-constrained LMI
///
///   N >= 0, M >= 0, rank N <= 1,  X - Kz o N - Kl o M >= 0
///
/// where Kz = [1 - conj(z_a) z_b] and Kl = [1 - conj(l_a) l_b].
///
/// The convex relaxation (rank dropped, diagonals capped by the entry bounds)
/// is solved by a log-det barrier method that returns both a primal point and
/// an upper bound on the best achievable minimum eigenvalue of the residual.
/// The rank-one search parametrizes N = gamma^* gamma through n structured
/// coefficients and runs multi-start projected ascent on
/// t(c) = max_M min-eig(residual) with finite-difference gradients.
///

#include <optional>
#include <string>

#include <specnp/lmi_builder.hpp>

namespace specnp {

struct SolverConfig {
  double psd_tol = 1e-8;
  double rank_tol = 1e-6;
  int max_outer_iters = 60;
  int restarts = 16;
  unsigned long long seed = 0;
  /// Backtracking factor applied to a rejected ascent step.
  double step_decay = 0.5;
  /// Number of backtracking halvings before a restart is abandoned.
  int max_backtracks = 10;
  /// Duality-gap tolerance of the inner barrier solves.
  double gap_tol = 1e-10;
  /// The ascent keeps going past -psd_tol until the residual margin reaches
  /// this value or stalls; a positive margin makes the synthesis well posed.
  double margin_target = 1e-6;
};

/// Throws Error(Precondition) on non-positive tolerances or restarts < 1.
void validate(const SolverConfig& cfg);

enum class VerdictKind { Solvable, Unsolvable, Indeterminate };

const char* to_string(VerdictKind kind);

struct RelaxationResult {
  bool feasible = false;
  /// Relaxation certified infeasible: upper_bound < -psd_tol with valid caps.
  bool certified_infeasible = false;
  /// Best minimum eigenvalue of the residual found, and a certified upper
  /// bound on it.
  double floor = 0.0;
  double upper_bound = 0.0;
  /// False when some |s_j| >= 2 and a generic trace cap was used.
  bool caps_valid = true;
  WitnessPair witness;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Indeterminate;
  /// Rank-one witness (Solvable).
  std::optional<WitnessPair> witness;
  /// Certified upper bound on the relaxation's min-eigenvalue (Unsolvable).
  double relaxation_residual = 0.0;
  /// Objective (tr N)^2 - tr(N^2) at the relaxation's witness, an upper bound
  /// on the program's minimum over the feasible set.
  double best_objective = 0.0;
  std::optional<WitnessPair> best_witness;
  /// Best min-eigenvalue of the residual over rank-one candidates.
  double best_rank1_min_eig = -std::numeric_limits<double>::infinity();
  std::optional<WitnessPair> best_rank1;
  int restarts_used = 0;
  std::string message;
};

struct CertificateReport {
  double min_residual_eig = 0.0;
  int rank_N = 0;
  double objective = 0.0;
  int bound_violations = 0;
  /// max |entry| / cap over N and M; zero when the caps are undefined.
  double max_bound_ratio = 0.0;
  bool psd_N = true;
  bool psd_M = true;
  bool feasible = false;
};

/// Decides whether PSD (N, M) with capped diagonals satisfy the LMI.
RelaxationResult relaxed_feasible(const LmiSystem& lmi, const SolverConfig& cfg);

/// (tr N)^2 - tr(N^2) = 2 tr of the second exterior power of N.
double objective(const CMat& N);

/// Rank-one candidate in structured form gamma_{jk} = c_j / (1 - s_j z_k / 2).
///
/// For such gamma the three columns of node j satisfy one linear relation x_j
/// shared by the source and target vectors, and every exact witness has
/// M x_j = 0 and residual x_j = 0. M is therefore taken as Q Mr Q^* with Q an
/// orthonormal basis of the complement of the x_j, and the reduced residual
/// Q^* R Q is maximized in its minimum eigenvalue over Mr >= 0.
struct RankOneCandidate {
  CVec c;
  CRowVec gamma;
  CMat basis;  // Q, 3n x 2n
  /// max over Mr of min-eig(Q^* R Q), and a certified upper bound on it.
  double t = -std::numeric_limits<double>::infinity();
  double upper_bound = std::numeric_limits<double>::infinity();
  CMat M;
};

/// gamma as a function of the structured coefficients, column j of the
/// 3n x n matrix holding 1 / (1 - s_j z_k / 2) on node j's rows.
CMat structured_basis(const LmiSystem& lmi);

/// trace_cap bounds tr M; pass a non-positive value to use the entry bounds.
RankOneCandidate evaluate_structured(const LmiSystem& lmi, const CVec& c,
                                     const SolverConfig& cfg,
                                     double trace_cap = 0.0);

Verdict solve_rank_constrained(const LmiSystem& lmi, const SolverConfig& cfg);

CertificateReport certify_witness(const LmiSystem& lmi, const WitnessPair& w,
                                  const SolverConfig& cfg);

}  // namespace specnp

#endif  // SPECNP_FEASIBILITY_ENGINE_HPP
