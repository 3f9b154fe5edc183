#include <specnp/gamma_core.hpp>

#include <cmath>
#include <sstream>

namespace specnp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularDenominator: return "singular-denominator";
    case ErrorKind::Inconsistent: return "inconsistent";
    case ErrorKind::DuplicateNode: return "duplicate-node";
    case ErrorKind::NodeOutsideDisc: return "node-outside-disc";
    case ErrorKind::ScalarTarget: return "scalar-target";
    case ErrorKind::OutsideGamma: return "outside-gamma";
    case ErrorKind::EmptyProblem: return "empty-problem";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::BoundUndefined: return "bound-undefined";
    case ErrorKind::RankExceeded: return "rank-exceeded";
    case ErrorKind::NegativeEigenvalue: return "negative-eigenvalue";
    case ErrorKind::InvalidWitness: return "invalid-witness";
    case ErrorKind::NearSingular: return "near-singular";
    case ErrorKind::ShapeViolation: return "shape-violation";
    case ErrorKind::SingularLift: return "singular-lift";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::IdentityViolation: return "identity-violation";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Schema: return "schema";
  }
  return "unknown";
}

GammaPoint trdet(const Matrix2& w) {
  return {w(0, 0) + w(1, 1), w(0, 0) * w(1, 1) - w(0, 1) * w(1, 0)};
}

std::pair<cplx, cplx> symmetric_roots(const GammaPoint& pt) {
  const cplx disc = std::sqrt(pt.s * pt.s - 4.0 * pt.p);
  const cplx plus = pt.s + disc;
  const cplx minus = pt.s - disc;
  const cplx q = 0.5 * (std::abs(plus) >= std::abs(minus) ? plus : minus);
  if (q == cplx(0.0)) {
    // s = 0 and s^2 = 4p, so both roots vanish.
    return {cplx(0.0), cplx(0.0)};
  }
  return {q, pt.p / q};
}

double spectral_radius_2x2(const Matrix2& w) {
  const auto [r1, r2] = symmetric_roots(trdet(w));
  return std::max(std::abs(r1), std::abs(r2));
}

cplx magic_phi(cplx z, const GammaPoint& pt, double tol) {
  const cplx den = 2.0 - z * pt.s;
  if (std::abs(den) < tol) {
    std::ostringstream os;
    os << "magic_phi: |2 - z s| = " << std::abs(den) << " below " << tol
       << " at z = " << z << ", s = " << pt.s;
    throw Error(ErrorKind::SingularDenominator, os.str());
  }
  return (2.0 * z * pt.p - pt.s) / den;
}

bool in_gamma(const GammaPoint& pt, double tol) {
  const auto [r1, r2] = symmetric_roots(pt);
  return std::abs(r1) <= 1.0 + tol && std::abs(r2) <= 1.0 + tol;
}

bool in_open_g(const GammaPoint& pt, double tol) {
  const auto [r1, r2] = symmetric_roots(pt);
  return std::abs(r1) < 1.0 - tol && std::abs(r2) < 1.0 - tol;
}

bool in_bgamma(const GammaPoint& pt, double tol) {
  return std::abs(std::abs(pt.p) - 1.0) <= tol &&
         std::abs(pt.s - std::conj(pt.s) * pt.p) <= tol &&
         std::abs(pt.s) <= 2.0 + tol;
}

GammaPoint scale_gamma(double rho, const GammaPoint& pt) {
  if (!(rho > 0.0)) {
    throw Error(ErrorKind::Precondition, "scale_gamma: rho must be positive");
  }
  return {rho * pt.s, rho * rho * pt.p};
}

double pseudo_hyperbolic(cplx l1, cplx l2) {
  return std::abs(l1 - l2) / std::abs(1.0 - std::conj(l2) * l1);
}

bool two_point_antipodal_solvable(cplx l1, cplx l2, cplx zeta) {
  return std::abs(zeta) < pseudo_hyperbolic(l1, l2);
}

GammaPoint recover_h_from_slice(const std::array<cplx, 3>& z,
                                const std::array<cplx, 3>& g, double tol) {
  // g (b z + 1) = a z + b  <=>  a z + b (1 - g z) = g
  Eigen::Matrix<cplx, 3, 2> a;
  Eigen::Vector3cd rhs;
  for (int i = 0; i < 3; ++i) {
    a(i, 0) = z[i];
    a(i, 1) = 1.0 - g[i] * z[i];
    rhs(i) = g[i];
  }
  const Eigen::Vector2cd ab = a.colPivHouseholderQr().solve(rhs);
  const double res = (a * ab - rhs).norm();
  if (!(res <= tol * (1.0 + rhs.norm()))) {
    std::ostringstream os;
    os << "recover_h_from_slice: samples are not of the form (a z + b)/(b z + 1)"
       << " (residual " << res << ")";
    throw Error(ErrorKind::Inconsistent, os.str());
  }
  return {-2.0 * ab(1), ab(0)};
}

cplx cayley(cplx lambda) {
  if (lambda == cplx(1.0)) {
    throw Error(ErrorKind::Pole, "cayley: pole at lambda = 1");
  }
  return (1.0 + lambda) / (1.0 - lambda);
}

cplx cayley_inv(cplx s) {
  if (s == cplx(-1.0)) {
    throw Error(ErrorKind::Pole, "cayley_inv: pole at s = -1");
  }
  return (s - 1.0) / (s + 1.0);
}

}  // namespace specnp
