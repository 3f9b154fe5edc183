#ifndef SPECNP_RATIONAL_HPP
#define SPECNP_RATIONAL_HPP

#include <vector>

#include <specnp/polynomial.hpp>

namespace specnp {

/// num / den in the half-plane variable s, kept in reduced form: common roots
/// (matched within 1e-9) are cancelled after every operation.
class ScalarRational {
 public:
  ScalarRational() : num_(), den_(Polynomial::constant(1.0)) {}
  ScalarRational(cplx c);  // NOLINT(google-explicit-constructor)
  ScalarRational(double c) : ScalarRational(cplx(c)) {}  // NOLINT(google-explicit-constructor)
  ScalarRational(Polynomial num, Polynomial den);

  /// (s - gamma) / (s + conj(gamma)); Re gamma > 0 required.
  static ScalarRational blaschke(cplx gamma);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_proper() const { return num_.degree() <= den_.degree(); }
  /// Proper with every pole in Re s < -1e-9.
  bool is_rh_inf() const;
  std::vector<cplx> poles() const { return den_.roots(); }

  /// Throws Error(Pole) when den(s) = 0 to working precision.
  cplx operator()(cplx s) const;
  /// Limit as s -> infinity. Throws Error(Pole) if improper.
  cplx at_infinity() const;

  ScalarRational operator+(const ScalarRational& o) const;
  ScalarRational operator-(const ScalarRational& o) const;
  ScalarRational operator*(const ScalarRational& o) const;
  ScalarRational operator/(const ScalarRational& o) const;
  ScalarRational operator-() const;

 private:
  void reduce();
  Polynomial num_;
  Polynomial den_;
};

/// Rectangular matrix of ScalarRational.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols);
  RationalMatrix(std::initializer_list<std::initializer_list<ScalarRational>> rows);

  static RationalMatrix identity(int n);
  static RationalMatrix diag(const std::vector<ScalarRational>& d);
  /// Assembles a block matrix; every block row must share heights.
  static RationalMatrix blocks(const std::vector<std::vector<RationalMatrix>>& b);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  ScalarRational& operator()(int i, int j) { return e_[i * cols_ + j]; }
  const ScalarRational& operator()(int i, int j) const { return e_[i * cols_ + j]; }

  RationalMatrix block(int i, int j, int r, int c) const;

  CMat evaluate(cplx s) const;
  CMat at_infinity() const;
  bool is_rh_inf() const;

  RationalMatrix operator+(const RationalMatrix& o) const;
  RationalMatrix operator-(const RationalMatrix& o) const;
  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalMatrix operator*(const ScalarRational& a) const;
  RationalMatrix operator-() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<ScalarRational> e_;
};

}  // namespace specnp

#endif  // SPECNP_RATIONAL_HPP
