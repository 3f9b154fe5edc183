#ifndef SPECNP_ROBUST_STAB_HPP
#define SPECNP_ROBUST_STAB_HPP

///
/// \file robust_stab.hpp
///
/// The worked robust stabilization family. The plant G has 2x2 corner blocks
///
///   G11 = [b1 b3, b1 + g b3; a b3 + f b1, c b_r3 + b1 b3],  G33 = [0 b1/b3; b3/b1 0],
///   G13 = diag(1, b1/b3),  G31 = diag(1, b3/b1),
///
/// with b_x the Blaschke factor at x and r3 = sqrt(3). Model matching reduces
/// robust stabilization against {delta I : |delta| <= 1} to finding Q in RH-inf
/// with sup r(T1 - b1 b3 Q) < 1, which after the Cayley map is the two-point
/// spectral problem F(0) = T1(1), F(1/2) = T1(3).
///

#include <functional>
#include <vector>

#include <specnp/problem_model.hpp>
#include <specnp/rational.hpp>

namespace specnp::robust {

/// (s - gamma) / (s + conj(gamma)). Throws Error(Precondition) unless Re gamma > 0.
ScalarRational blaschke(cplx gamma);

struct FgPair {
  ScalarRational f;  // (4/3)(s + 3)/(s + 1)
  ScalarRational g;  // -(s + 3)(s + 5) / (3 (s + 1)^2)
};
/// f b1 + g b3 = 1.
FgPair fg_pair();

/// Deterministic samples 0.5 + 0.3k + 0.7k i, k = 1..20.
std::vector<cplx> sample_points();

/// Doubly coprime factorization of G33 = N_hat M_hat^{-1} = M_tilde^{-1} N_tilde.
struct CoprimeData {
  RationalMatrix N_hat, M_hat, N_tilde, M_tilde;
  RationalMatrix X_tilde, Y_tilde, X_hat, Y_hat;
};

/// Max-abs deviation of [X~ -Y~; -N~ M~][M^ Y^; N^ X^] from I at s.
double bezout2_residual(const CoprimeData& cd, cplx s);
/// Max-abs deviation of N^ M^{-1} from M~^{-1} N~ at s.
double doubly_residual(const CoprimeData& cd, cplx s);

/// Throws Error(IdentityViolation) if either identity fails by 1e-8 at a
/// sample point.
CoprimeData doubly_coprime();

struct TFunctions {
  RationalMatrix T1;  // [0 b1; a b3  c b_r3]
  ScalarRational T2;  // b1 (times I)
  ScalarRational T3;  // b3 (times I)
};
/// Throws Error(Precondition) if c = 0.
TFunctions build_T(cplx a, cplx c);

/// Nodes {0, 1/2}, targets T1(1) and T1(3).
SpectralProblem to_disc_problem(cplx a, cplx c);

/// 1 / (4 - 2 sqrt(3)).
double robust_threshold();
/// |c| < 1 / (4 - 2 sqrt(3)).
bool robust_criterion(cplx c);

using DiscMatrixFn = std::function<Matrix2(cplx)>;
using HalfPlaneMatrixFn = std::function<Matrix2(cplx)>;

/// Q = (T1 - F o kappa^{-1}) / (b1 b3), finite at s = 1, 3.
class QFunction {
 public:
  QFunction(DiscMatrixFn F, cplx a, cplx c);

  Matrix2 operator()(cplx s) const;
  Matrix2 at_infinity() const { return q_inf_; }
  /// F at lambda = 1 - 1e-7.
  const Matrix2& F_at_one() const { return f1_; }
  cplx a() const { return a_; }
  cplx c() const { return c_; }

 private:
  Matrix2 direct(cplx s) const;

  DiscMatrixFn F_;
  cplx a_, c_;
  RationalMatrix T1_;
  ScalarRational b1b3_;
  Matrix2 f1_;
  Matrix2 q_inf_;
};

/// Z with X^(inf) - N^(inf) Q(inf) = [0 1; 1 0](F(1) + Z).
Matrix2 nonsingularity_offset(cplx a, cplx c);

/// Throws Error(Precondition) if F(0) != T1(1) or F(1/2) != T1(3) (1e-6), or if
/// F(1) + Z is singular.
QFunction build_Q(DiscMatrixFn F, cplx a, cplx c);

/// K = (Y^ - M^ Q)(X^ - N^ Q)^{-1}.
class Controller {
 public:
  Controller(CoprimeData cd, HalfPlaneMatrixFn Q, Matrix2 q_inf);

  /// Throws Error(NearSingular) if X^ - N^ Q is singular at s.
  Matrix2 operator()(cplx s) const;
  /// (X~ - Q N~)^{-1} (Y~ - Q M~).
  Matrix2 dual(cplx s) const;
  Matrix2 at_infinity() const;
  /// Max-abs difference between the two formulas over sample_points().
  double formula_gap() const;

 private:
  CoprimeData cd_;
  HalfPlaneMatrixFn Q_;
  Matrix2 q_inf_;
};

/// Throws Error(NearSingular) if X^(inf) - N^(inf) Q(inf) is singular or the
/// two controller formulas disagree by more than 1e-8.
Controller build_controller(const CoprimeData& cd, HalfPlaneMatrixFn Q,
                            const Matrix2& q_inf);

struct RobustReport {
  double sup_radius = 0.0;
  cplx worst_s{0.0, 0.0};
  bool worst_at_infinity = false;
  bool pass = false;
};
/// sup r(T1 - b1 b3 Q) over s = i w (w = 0 and +-w log-spaced in [1e-3, 1e3],
/// grid_size magnitudes) and s = infinity; pass iff sup < 1 - 1e-6.
RobustReport verify_robust(const HalfPlaneMatrixFn& Q, const Matrix2& q_inf,
                           cplx a, cplx c, int grid_size = 400);
RobustReport verify_robust(const QFunction& Q, int grid_size = 400);

/// Free blocks of the plant; each must lie in RH-inf.
struct PlantBlocks {
  RationalMatrix R12 = RationalMatrix::identity(2);
  RationalMatrix R21 = RationalMatrix::identity(2);
  RationalMatrix R22 = RationalMatrix::identity(2);
  RationalMatrix R23 = RationalMatrix::identity(2);
  RationalMatrix R32 = RationalMatrix::identity(2);
};

/// 6x6 plant. Throws Error(Precondition) if some R is not in RH-inf.
RationalMatrix assemble_plant(cplx a, cplx c, const PlantBlocks& R = {});

struct StabilizabilityReport {
  double max_identity_error = 0.0;
  bool rhs_stable = false;
  bool ok = false;
};
/// Evaluates blockdiag(m^{-1}, I) [I 0 0 0; 0 I 0 0; 0 0 I Y^; G31 G32 G33 X^]^{-1}
/// at sample_points() and compares it with
/// [I 0 0 0; 0 I 0 0; -[b3 0; f b3] -R32 X~ -Y~; -b3 I -R32 -N~ M~] (1e-8).
StabilizabilityReport check_plant_stabilizable(const RationalMatrix& G,
                                               const CoprimeData& cd,
                                               const RationalMatrix& R32 =
                                                   RationalMatrix::identity(2));
bool verify_plant_stabilizable(const RationalMatrix& G, const CoprimeData& cd,
                               const RationalMatrix& R32 =
                                   RationalMatrix::identity(2));

}  // namespace specnp::robust

#endif  // SPECNP_ROBUST_STAB_HPP
