#ifndef SPECNP_PROBLEM_MODEL_HPP
#define SPECNP_PROBLEM_MODEL_HPP

#include <array>
#include <string>
#include <vector>

#include <specnp/types.hpp>

namespace specnp {

/// Interpolation data with 2x2 matrix targets: F(nodes[j]) = targets[j].
struct SpectralProblem {
  std::vector<cplx> nodes;
  std::vector<Matrix2> targets;
};

/// Interpolation data in symmetrized coordinates: h(nodes[j]) = values[j].
struct GammaProblem {
  std::vector<cplx> nodes;
  std::vector<GammaPoint> values;

  std::size_t size() const { return nodes.size(); }
};

/// Three auxiliary points of the closed disc at which the magic functions are
/// sampled.
struct ZGrid {
  std::array<cplx, 3> z{cplx(-1.0), cplx(0.0), cplx(1.0)};
};

/// Admissibility margin for |2 - z_k s_j|.
inline constexpr double kZGridMargin = 1e-6;

/// Throws on duplicate nodes, nodes outside the open disc, or scalar targets.
/// Returns human-readable warnings for nearly scalar targets.
std::vector<std::string> validate(const SpectralProblem& problem);

/// Throws on an empty problem, duplicate nodes, nodes outside the open disc,
/// or values outside Gamma.
void validate(const GammaProblem& problem);

bool is_scalar_target(const Matrix2& w, double rel_tol = 1e-12);

/// Same nodes, values (tr W_j, det W_j). Throws Error(OutsideGamma) if some
/// target has spectral radius above one, in which case no interpolant with
/// spectral radius bounded by one exists.
GammaProblem to_gamma_problem(const SpectralProblem& problem);

bool is_admissible(const ZGrid& grid, const GammaProblem& gp,
                   double margin = kZGridMargin);

/// Checks pairwise distinctness, |z_k| <= 1, and the denominator margin.
void validate(const ZGrid& grid, const GammaProblem& gp);

/// {-1, 0, 1}, with offending points pulled radially inward when some value
/// sits at (2 z_k, z_k^2).
ZGrid default_zgrid(const GammaProblem& gp);

}  // namespace specnp

#endif  // SPECNP_PROBLEM_MODEL_HPP
