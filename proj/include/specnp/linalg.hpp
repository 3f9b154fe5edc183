#ifndef SPECNP_LINALG_HPP
#define SPECNP_LINALG_HPP

#include <specnp/types.hpp>

namespace specnp {

/// (A + A^*) / 2.
CMat hermitian_part(const CMat& a);

/// Smallest eigenvalue of the Hermitian part of a. Empty matrices give +inf.
double min_eigenvalue(const CMat& a);
double max_eigenvalue(const CMat& a);

/// Operator (spectral) norm.
double operator_norm(const CMat& a);

/// A >= 0 in the sense min-eig(A) >= -tol * (1 + ||A||).
bool is_psd(const CMat& a, double tol = 1e-8);

/// Number of eigenvalues above rel_tol * max-eigenvalue (Hermitian input).
int numerical_rank(const CMat& a, double rel_tol);

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped).
CMat project_psd(const CMat& a);

}  // namespace specnp

#endif  // SPECNP_LINALG_HPP
