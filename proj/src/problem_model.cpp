#include <specnp/problem_model.hpp>

#include <cmath>
#include <sstream>

#include <specnp/gamma_core.hpp>

namespace specnp {
namespace {

void check_nodes(const std::vector<cplx>& nodes) {
  if (nodes.empty()) {
    throw Error(ErrorKind::EmptyProblem, "problem has no interpolation nodes");
  }
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (!(std::abs(nodes[j]) < 1.0)) {
      std::ostringstream os;
      os << "node " << j << " = " << nodes[j] << " is not in the open unit disc";
      throw Error(ErrorKind::NodeOutsideDisc, os.str());
    }
    for (std::size_t i = 0; i < j; ++i) {
      if (std::abs(nodes[i] - nodes[j]) <= 1e-14) {
        std::ostringstream os;
        os << "nodes " << i << " and " << j << " coincide";
        throw Error(ErrorKind::DuplicateNode, os.str());
      }
    }
  }
}

}  // namespace

bool is_scalar_target(const Matrix2& w, double rel_tol) {
  const double scale = w.norm();
  const double off = std::abs(w(0, 1)) + std::abs(w(1, 0)) +
                     std::abs(w(0, 0) - w(1, 1));
  return off <= rel_tol * scale;
}

std::vector<std::string> validate(const SpectralProblem& problem) {
  if (problem.nodes.size() != problem.targets.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "number of nodes and number of targets differ");
  }
  check_nodes(problem.nodes);
  std::vector<std::string> warnings;
  for (std::size_t j = 0; j < problem.targets.size(); ++j) {
    const Matrix2& w = problem.targets[j];
    if (!w.allFinite()) {
      std::ostringstream os;
      os << "target " << j << " has non-finite entries";
      throw Error(ErrorKind::Schema, os.str());
    }
    if (is_scalar_target(w)) {
      std::ostringstream os;
      os << "target " << j << " is a scalar multiple of the identity";
      throw Error(ErrorKind::ScalarTarget, os.str());
    }
    const Matrix2 traceless =
        w - 0.5 * (w(0, 0) + w(1, 1)) * Matrix2::Identity();
    if (traceless.norm() < 1e-6 * w.norm()) {
      std::ostringstream os;
      os << "target " << j
         << " is nearly scalar; the companion similarity is ill-conditioned";
      warnings.push_back(os.str());
    }
  }
  return warnings;
}

void validate(const GammaProblem& problem) {
  if (problem.nodes.size() != problem.values.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "number of nodes and number of values differ");
  }
  check_nodes(problem.nodes);
  for (std::size_t j = 0; j < problem.values.size(); ++j) {
    if (!in_gamma(problem.values[j])) {
      std::ostringstream os;
      os << "value " << j << " = (" << problem.values[j].s << ", "
         << problem.values[j].p << ") lies outside Gamma";
      throw Error(ErrorKind::OutsideGamma, os.str());
    }
  }
}

GammaProblem to_gamma_problem(const SpectralProblem& problem) {
  GammaProblem gp;
  gp.nodes = problem.nodes;
  gp.values.reserve(problem.targets.size());
  for (std::size_t j = 0; j < problem.targets.size(); ++j) {
    const GammaPoint v = trdet(problem.targets[j]);
    if (!in_gamma(v)) {
      std::ostringstream os;
      os << "target " << j << " has spectral radius "
         << spectral_radius_2x2(problem.targets[j])
         << " > 1; no interpolant with spectral radius at most one exists";
      throw Error(ErrorKind::OutsideGamma, os.str());
    }
    gp.values.push_back(v);
  }
  return gp;
}

bool is_admissible(const ZGrid& grid, const GammaProblem& gp, double margin) {
  for (int k = 0; k < 3; ++k) {
    if (std::abs(grid.z[k]) > 1.0 + 1e-15) return false;
    for (int l = 0; l < k; ++l) {
      if (std::abs(grid.z[k] - grid.z[l]) <= 1e-12) return false;
    }
    for (const GammaPoint& v : gp.values) {
      if (std::abs(2.0 - grid.z[k] * v.s) < margin) return false;
    }
  }
  return true;
}

void validate(const ZGrid& grid, const GammaProblem& gp) {
  if (!is_admissible(grid, gp)) {
    throw Error(ErrorKind::Precondition,
                "z-grid must hold three distinct points of the closed disc "
                "with |2 - z_k s_j| bounded away from zero");
  }
}

ZGrid default_zgrid(const GammaProblem& gp) {
  ZGrid grid;
  if (is_admissible(grid, gp)) return grid;
  for (int k = 0; k < 3; ++k) {
    bool offending = false;
    for (const GammaPoint& v : gp.values) {
      offending = offending || std::abs(2.0 - grid.z[k] * v.s) < kZGridMargin;
    }
    if (!offending) continue;
    const cplx original = grid.z[k];
    // Try the smallest inward shift first.
    for (int m = 52; m >= 1; --m) {
      grid.z[k] = original * (1.0 - std::ldexp(1.0, -m));
      bool ok = true;
      for (const GammaPoint& v : gp.values) {
        ok = ok && std::abs(2.0 - grid.z[k] * v.s) >= kZGridMargin;
      }
      for (int l = 0; l < 3; ++l) {
        ok = ok && (l == k || std::abs(grid.z[k] - grid.z[l]) > 1e-12);
      }
      if (ok) break;
    }
  }
  return grid;
}

}  // namespace specnp
