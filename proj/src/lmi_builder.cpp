#include <specnp/lmi_builder.hpp>

#include <cmath>

#include <specnp/gamma_core.hpp>

namespace specnp {

LmiSystem build_lmi(const GammaProblem& gp, const ZGrid& grid) {
  const int n = static_cast<int>(gp.size());
  LmiSystem lmi;
  lmi.problem = gp;
  lmi.grid = grid;
  lmi.lambda_diag.resize(3 * n);
  lmi.z_diag.resize(3 * n);
  CVec phi(3 * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < 3; ++k) {
      const int a = LmiSystem::index(j, k);
      lmi.lambda_diag(a) = gp.nodes[j];
      lmi.z_diag(a) = grid.z[k];
      phi(a) = magic_phi(grid.z[k], gp.values[j], kZGridMargin);
    }
  }
  lmi.X = one_minus_kernel(phi);
  return lmi;
}

CMat one_minus_kernel(const CVec& u) {
  const Eigen::Index d = u.size();
  CMat k(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      k(a, b) = 1.0 - std::conj(u(a)) * u(b);
    }
  }
  return k;
}

CMat residual(const LmiSystem& lmi, const WitnessPair& w) {
  const int d = lmi.dim();
  if (w.N.rows() != d || w.N.cols() != d || w.M.rows() != d ||
      w.M.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch,
                "witness dimensions do not match the LMI");
  }
  const CMat z = lmi.Zmat();
  const CMat l = lmi.Lambda();
  return lmi.X - (w.N - z.adjoint() * w.N * z) -
         (w.M - l.adjoint() * w.M * l);
}

EntryBounds entry_bounds(const GammaProblem& gp) {
  const int n = static_cast<int>(gp.size());
  RVec inv(n);
  RVec eta(n);
  for (int j = 0; j < n; ++j) {
    const double gap = 1.0 - 0.5 * std::abs(gp.values[j].s);
    if (!(gap > 0.0)) {
      throw Error(ErrorKind::BoundUndefined,
                  "entry bounds need |s_j| < 2 for every value");
    }
    inv(j) = 1.0 / gap;
    eta(j) = std::sqrt(1.0 + inv(j) * inv(j));
  }
  EntryBounds eb;
  eb.N_cap.resize(3 * n, 3 * n);
  eb.M_cap.resize(3 * n, 3 * n);
  for (int a = 0; a < 3 * n; ++a) {
    const int i = a / 3;
    for (int b = 0; b < 3 * n; ++b) {
      const int j = b / 3;
      eb.N_cap(a, b) = inv(i) * inv(j);
      eb.M_cap(a, b) = 2.0 * eta(i) * eta(j) /
                       std::abs(1.0 - std::conj(gp.nodes[i]) * gp.nodes[j]);
    }
  }
  return eb;
}

SchurForm to_schur_form(const LmiSystem& lmi, const CRowVec& gamma,
                        const CMat& M, const CMat& P) {
  const int d = lmi.dim();
  if (gamma.size() != d || M.rows() != d || M.cols() != d || P.rows() != d ||
      P.cols() != 2) {
    throw Error(ErrorKind::DimensionMismatch,
                "Schur-form data dimensions do not match the LMI");
  }
  const CMat z = lmi.Zmat();
  const CMat l = lmi.Lambda();
  SchurForm out;
  out.lhs = CMat::Zero(d + 2, d + 2);
  out.lhs(0, 0) = -1.0;
  out.lhs(1, 1) = 1.0;
  out.lhs.bottomRightCorner(d, d) = lmi.X;

  CMat core = CMat::Zero(d + 2, d + 2);
  core(0, 0) = -1.0;
  core(1, 1) = 1.0;
  core.block(0, 2, 1, d) = gamma;
  core.block(1, 2, 1, d) = gamma * z;
  core.block(2, 0, d, 1) = gamma.adjoint();
  core.block(2, 1, d, 1) = z.adjoint() * gamma.adjoint();
  core.bottomRightCorner(d, d) = M - l.adjoint() * M * l;

  CMat t = CMat::Identity(d + 2, d + 2);
  t.block(2, 0, d, 2) = P;
  out.rhs = t * core * t.adjoint();
  return out;
}

WitnessPair from_schur_form(const LmiSystem& lmi, const CMat& M,
                            const CRowVec& gamma, const CMat& P, double tol) {
  const int d = lmi.dim();
  if (gamma.size() != d || P.rows() != d || P.cols() != 2) {
    throw Error(ErrorKind::DimensionMismatch,
                "Schur-form data dimensions do not match the LMI");
  }
  CMat expected(d, 2);
  expected.col(0) = gamma.adjoint();
  expected.col(1) = -(lmi.Zmat().adjoint() * gamma.adjoint());
  if ((P - expected).norm() > tol * (1.0 + expected.norm())) {
    throw Error(ErrorKind::Inconsistent,
                "P is not [gamma^*, -Z^* gamma^*]");
  }
  WitnessPair w;
  w.N = gamma.adjoint() * gamma;
  w.M = M;
  w.gamma = gamma;
  return w;
}

}  // namespace specnp
