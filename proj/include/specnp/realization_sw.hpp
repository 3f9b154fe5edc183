#ifndef SPECNP_REALIZATION_SW_HPP
#define SPECNP_REALIZATION_SW_HPP

///
/// \file realization_sw.hpp
///
/// Interpolant synthesis from a rank-one witness. With N = gamma^* gamma and
/// M = V^* V (columns v_a), the vectors
///
///   S_a = (1, z_a gamma_a, lambda_a v_a),   T_a = (-Phi_a, gamma_a, v_a)
///
/// satisfy Gram(S) - Gram(T) = residual >= 0, so some contraction L on
/// C^2 (+) C^m maps every S_a to T_a. Writing L = [A B; C D],
///
///   Psi(lambda) = A + lambda B (I - lambda D)^{-1} C,   h = (tr, det) Psi
///
/// solves the Gamma interpolation problem.
///

#include <functional>
#include <optional>
#include <random>

#include <specnp/lmi_builder.hpp>

namespace specnp {

struct Realization {
  CMat A;  // 2 x 2
  CMat B;  // 2 x m
  CMat C;  // m x 2
  CMat D;  // m x m
  bool unitary = false;

  int state_dim() const { return static_cast<int>(D.rows()); }
  /// [A B; C D].
  CMat block() const;
  static Realization from_block(const CMat& L, bool unitary = false);
};

/// Psi(lambda). Throws Error(NearSingular) if I - lambda D is numerically
/// singular.
Matrix2 eval_psi(const Realization& r, cplx lambda);
GammaPoint eval_h(const Realization& r, cplx lambda);

/// gamma with N = gamma^* gamma, phase fixed so that the largest-modulus
/// entry is real and positive. Throws Error(RankExceeded) if the second
/// eigenvalue exceeds rel_tol times the first.
CRowVec factor_rank1(const CMat& N, double rel_tol = 1e-6);

/// V (m x d) with M = V^* V, keeping eigenvalues above rel_tol * max(1, ||M||).
/// Throws Error(NegativeEigenvalue) below -neg_tol * (1 + ||M||).
CMat factor_psd(const CMat& M, double rel_tol = 1e-13, double neg_tol = 1e-8);

struct SwOptions {
  /// Allowed negativity of Gram(S) - Gram(T), relative to 1 + ||S||^2.
  double domination_tol = 1e-7;
  /// Singular values of S below rank_tol * ||S|| are treated as zero.
  double rank_tol = 1e-10;
  /// ||Gram(S) - Gram(T)|| below this (relative) selects unitary completion.
  double equality_tol = 1e-9;
  bool unitary_completion = true;
};

struct SwResult {
  Realization realization;
  /// ||L|| before any normalization.
  double raw_norm = 0.0;
  /// Minimum eigenvalue of Gram(S) - Gram(T).
  double domination_margin = 0.0;
  int span_rank = 0;
};

/// Builds L from gamma (1 x 3n) and V (m x 3n). Throws Error(InvalidWitness)
/// if the source Gramian does not dominate the target Gramian.
SwResult build_contraction(const LmiSystem& lmi, const CRowVec& gamma,
                           const CMat& V, const SwOptions& opt = {});

/// Factors the witness and calls build_contraction.
SwResult procedure_sw(const LmiSystem& lmi, const WitnessPair& w,
                      const SwOptions& opt = {}, double rank_tol = 1e-6);

using PsiEvaluator = std::function<Matrix2(cplx)>;
using HEvaluator = std::function<GammaPoint(cplx)>;

/// Equality witness of a solution given through its Psi. Requires
/// Psi_11 = Psi_22 = s/2 and Psi_12 Psi_21 = s^2/4 - p at the nodes.
///
///   gamma_a = Psi_21(l_j) / (1 - s_j z_k / 2),  eta_a = (1, z_k gamma_a)
///   M_ab = eta_a^* (I - Psi(l_i)^* Psi(l_j)) eta_b / (1 - conj(l_i) l_j)
///
/// Throws Error(ShapeViolation) or Error(SingularDenominator).
WitnessPair witness_from_solution(const PsiEvaluator& psi,
                                  const GammaProblem& gp, const ZGrid& grid,
                                  double shape_tol = 1e-8);

/// Matrix interpolant F(lambda) = P(lambda)^{-1} [0 1; -p s] P(lambda) with
/// F(lambda_j) = W_j, where P interpolates the companion similarities.
class CompanionLift {
 public:
  struct Anchor {
    cplx node;
    Matrix2 value;
  };

  /// Throws Error(ScalarTarget) or Error(SingularLift).
  CompanionLift(HEvaluator h, const SpectralProblem& problem,
                std::optional<Anchor> anchor = std::nullopt,
                unsigned long long seed = 0);

  Matrix2 operator()(cplx lambda) const;
  Matrix2 similarity(cplx lambda) const;

  /// True when P is a polynomial; false when the exponential fallback is used.
  bool polynomial() const { return polynomial_; }
  /// Coefficients of P in increasing degree (polynomial case).
  const std::vector<Matrix2>& coefficients() const { return coeffs_; }

 private:
  HEvaluator h_;
  bool polynomial_ = true;
  std::vector<Matrix2> coeffs_;
  // Exponential fallback: P = exp(sum_k logs_k * l^k).
  std::vector<Matrix2> log_coeffs_;
};

/// Companion similarity [y; y W] for the first admissible covector e1, e2.
Matrix2 companion_similarity(const Matrix2& w);

/// h(lambda) in bGamma (within 1e-5) at n_samples points (1 - 1e-8) e^{i theta}.
bool check_gamma_inner(const Realization& r, int n_samples = 64);

/// Nodes values within 1e-6 and Gamma membership (slack 1e-8) on a 64-point
/// grid of the disc.
struct InterpolantCheck {
  double max_node_error = 0.0;
  double worst_gamma_excess = 0.0;
  bool nodes_ok = false;
  bool gamma_ok = false;
  bool ok() const { return nodes_ok && gamma_ok; }
};
InterpolantCheck verify_interpolant(const HEvaluator& h, const GammaProblem& gp,
                                    double node_tol = 1e-6,
                                    double gamma_slack = 1e-8);

/// Largest root modulus of z^2 - s z + p minus one (negative inside Gamma).
double gamma_excess(const GammaPoint& pt);

}  // namespace specnp

#endif  // SPECNP_REALIZATION_SW_HPP
