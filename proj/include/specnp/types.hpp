#ifndef SPECNP_TYPES_HPP
#define SPECNP_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace specnp {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using CRowVec = Eigen::RowVectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Matrix2 = Eigen::Matrix2cd;

/// A point of C^2 written in symmetrized coordinates: s is the sum and p the
/// product of a pair (z, w). For a 2x2 matrix, (s, p) = (trace, determinant).
struct GammaPoint {
  cplx s{0.0, 0.0};
  cplx p{0.0, 0.0};
};

enum class ErrorKind {
  SingularDenominator,
  Inconsistent,
  DuplicateNode,
  NodeOutsideDisc,
  ScalarTarget,
  OutsideGamma,
  EmptyProblem,
  DimensionMismatch,
  BoundUndefined,
  RankExceeded,
  NegativeEigenvalue,
  InvalidWitness,
  NearSingular,
  ShapeViolation,
  SingularLift,
  Precondition,
  IdentityViolation,
  Pole,
  Schema,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace specnp

#endif  // SPECNP_TYPES_HPP
