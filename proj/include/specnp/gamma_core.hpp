#ifndef SPECNP_GAMMA_CORE_HPP
#define SPECNP_GAMMA_CORE_HPP

///
/// \file gamma_core.hpp
///
/// Geometry of the symmetrized bidisc
///
///   Gamma = {(z + w, z w) : |z| <= 1, |w| <= 1},
///
/// its magic functions, and the pseudohyperbolic machinery used by the exact
/// two-point oracle.
///

#include <array>
#include <utility>

#include <specnp/types.hpp>

namespace specnp {

/// Default slack for Gamma membership queries.
inline constexpr double kMembershipTol = 1e-9;

/// (trace, determinant) of a 2x2 matrix.
GammaPoint trdet(const Matrix2& w);

/// Roots of z^2 - s z + p, ordered by decreasing modulus. Uses the branch of
/// the quadratic formula that avoids cancellation.
std::pair<cplx, cplx> symmetric_roots(const GammaPoint& pt);

double spectral_radius_2x2(const Matrix2& w);

/// Phi(z, s, p) = (2 z p - s) / (2 - z s).
///
/// Throws Error(SingularDenominator) when |2 - z s| < tol, which on the closed
/// bidisc only happens for (s, p) = (2 conj(z), conj(z)^2) with |z| = 1.
cplx magic_phi(cplx z, const GammaPoint& pt, double tol = 1e-12);

bool in_gamma(const GammaPoint& pt, double tol = kMembershipTol);
bool in_open_g(const GammaPoint& pt, double tol = kMembershipTol);

/// Distinguished boundary: |p| = 1, s = conj(s) p, |s| <= 2.
bool in_bgamma(const GammaPoint& pt, double tol = kMembershipTol);

/// rho . (s, p) = (rho s, rho^2 p). Requires rho > 0.
GammaPoint scale_gamma(double rho, const GammaPoint& pt);

/// |l1 - l2| / |1 - conj(l2) l1| for points of the open unit disc.
double pseudo_hyperbolic(cplx l1, cplx l2);

/// Exact solvability test for h(l1) = (zeta, 0), h(l2) = (-zeta, 0) with
/// h(D) relatively compact in the open symmetrized bidisc: |zeta| < d(l1, l2).
bool two_point_antipodal_solvable(cplx l1, cplx l2, cplx zeta);

/// Inverts z -> Phi(z, (s, p)) from three samples. The samples must fit a map
/// z -> (a z + b) / (b z + 1); the result is (s, p) = (-2 b, a).
GammaPoint recover_h_from_slice(const std::array<cplx, 3>& z,
                                const std::array<cplx, 3>& g,
                                double tol = 1e-9);

/// Cayley transform of the disc onto the right half-plane, (1 + l) / (1 - l).
cplx cayley(cplx lambda);
/// Inverse Cayley transform, (s - 1) / (s + 1).
cplx cayley_inv(cplx s);

}  // namespace specnp

#endif  // SPECNP_GAMMA_CORE_HPP
