#include <specnp/linalg.hpp>

#include <algorithm>
#include <limits>

namespace specnp {

CMat hermitian_part(const CMat& a) { return 0.5 * (a + a.adjoint()); }

double min_eigenvalue(const CMat& a) {
  if (a.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(a),
                                         Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const CMat& a) {
  if (a.size() == 0) return -std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(a),
                                         Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double operator_norm(const CMat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(a);
  return svd.singularValues()(0);
}

bool is_psd(const CMat& a, double tol) {
  if (a.size() == 0) return true;
  return min_eigenvalue(a) >= -tol * (1.0 + operator_norm(a));
}

int numerical_rank(const CMat& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(a),
                                         Eigen::EigenvaluesOnly);
  const RVec& ev = es.eigenvalues();
  const double top = std::max(ev.cwiseAbs().maxCoeff(), 0.0);
  if (top == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > rel_tol * top) ++rank;
  }
  return rank;
}

CMat project_psd(const CMat& a) {
  if (a.size() == 0) return a;
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(a));
  const RVec clipped = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * clipped.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace specnp
