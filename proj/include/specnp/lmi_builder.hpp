#ifndef SPECNP_LMI_BUILDER_HPP
#define SPECNP_LMI_BUILDER_HPP

///
/// \file lmi_builder.hpp
///
/// The 3n x 3n data of the matricial solvability criterion. Rows and columns
/// are indexed by pairs (j, k), node j = 0..n-1 outer and grid point
/// k = 0..2 inner, so row a = 3 j + k.
///
///   X_{a,b} = 1 - conj(Phi(z_k', s_i, p_i)) Phi(z_k, s_j, p_j)
///   Lambda  = diag(lambda_j),  Z = diag(z_k)
///
/// A witness (N, M) is feasible when
///
///   X - (N - Z^* N Z) - (M - Lambda^* M Lambda) >= 0.
///

#include <optional>
#include <utility>

#include <specnp/problem_model.hpp>
#include <specnp/types.hpp>

namespace specnp {

struct LmiSystem {
  CMat X;
  /// Diagonals of Lambda and Z.
  CVec lambda_diag;
  CVec z_diag;
  GammaProblem problem;
  ZGrid grid;

  int n() const { return static_cast<int>(problem.size()); }
  int dim() const { return static_cast<int>(X.rows()); }
  static int index(int j, int k) { return 3 * j + k; }
  static std::pair<int, int> pair_of(int a) { return {a / 3, a % 3}; }

  CMat Lambda() const { return lambda_diag.asDiagonal(); }
  CMat Zmat() const { return z_diag.asDiagonal(); }
};

struct WitnessPair {
  CMat N;
  CMat M;
  /// Present when N = gamma^* gamma.
  std::optional<CRowVec> gamma;
};

struct EntryBounds {
  RMat N_cap;
  RMat M_cap;
};

/// Throws Error(SingularDenominator) if the grid is not admissible.
LmiSystem build_lmi(const GammaProblem& gp, const ZGrid& grid);

/// (1 - conj(u_a) u_b)_{a,b}.
CMat one_minus_kernel(const CVec& u);

/// X - (N - Z^* N Z) - (M - Lambda^* M Lambda). Throws on dimension mismatch.
CMat residual(const LmiSystem& lmi, const WitnessPair& w);

/// Entrywise caps on |N| and |M| satisfied by every witness arising from a
/// solution. Requires |s_j| < 2 for all j, otherwise Error(BoundUndefined).
EntryBounds entry_bounds(const GammaProblem& gp);

/// Both sides of the Schur-complement form of the criterion:
///
///   lhs = diag(-1, 1, X)
///   rhs = [I 0; P I] [-1 0 g; 0 1 gZ; g^* Z^*g^* M - L^*ML] [I P^*; 0 I]
///
/// with g = gamma, L = Lambda. For P = [gamma^*, -Z^* gamma^*] the difference
/// lhs - rhs is diag(0, 0, residual) with N = gamma^* gamma.
struct SchurForm {
  CMat lhs;
  CMat rhs;
};
SchurForm to_schur_form(const LmiSystem& lmi, const CRowVec& gamma,
                        const CMat& M, const CMat& P);

/// Recovers (gamma^* gamma, M) from a Schur-form witness. Throws
/// Error(Inconsistent) if P is not [gamma^*, -Z^* gamma^*] within tol.
WitnessPair from_schur_form(const LmiSystem& lmi, const CMat& M,
                            const CRowVec& gamma, const CMat& P,
                            double tol = 1e-8);

}  // namespace specnp

#endif  // SPECNP_LMI_BUILDER_HPP
